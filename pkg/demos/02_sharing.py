# Call-by-need shares an argument: it is evaluated once and copied per use.
# On the graph that copy is the box duplication rule ("6").

from dgoim import dgoim_run, lockstep, parse, sam_check_bounds, sam_run, size

t = parse(r"(\x. x x) (\y. y)")
r = sam_run(t, trace=True)
print("rules:", ", ".join(rule for _, _, rule in r.trace))
print("b =", r.stats.b, " s =", r.stats.s)

# The lookup of y goes through the binding y <- x, and returning the value
# through both bindings costs one substitution step each.  So s exceeds b
# here, and the bound check says so.
print("s <= b and o linear:", sam_check_bounds(r.stats, size(t)))

d = dgoim_run(t)
print("graph rewrites:", {k: v for k, v in sorted(d.stats.per_rule.items()) if not k.startswith("pass")})
print("copy costs:", [c for c in d.costs if c > 2])

print("lockstep verdict:", "pass" if lockstep(t).verdict else "fail")

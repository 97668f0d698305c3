# Run the storeless abstract machine and the token machine on the same term
# and watch them move in step.

from dgoim import dgoim_run, lockstep, parse, sam_run, show
from dgoim.sam import format_trace_line

t = parse(r"(\x. x) (\z. z)")
print("term:", show(t))

# the abstract machine: six steps, one beta, one substitution
r = sam_run(t, trace=True)
for i, (c, label, rule) in enumerate(r.trace):
    print(format_trace_line(i, rule, label, c))
print("final:", r.config)
print("sam  b/s/o:", r.stats.b, r.stats.s, r.stats.o)

# the token machine on the translated graph takes more, smaller steps
d = dgoim_run(t, trace=True)
print("dgoim b/s/o:", d.stats.b, d.stats.s, d.stats.o, "cost", sum(d.costs))
print(" ".join(f["rule"] for f in d.trace))

# lockstep: each abstract step is matched by a fixed label pattern
rep = lockstep(t)
for line in rep.to_lines():
    print(line)

# unused arguments stay behind as a substitution around the value
k = sam_run(parse(r"(\x. \y. y) (\z. z)"))
print("garbage example ends at:", k.config)

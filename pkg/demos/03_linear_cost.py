# Time cost of the token machine on Church numerals c_n I I, n = 2..64.
# An efficient machine spends time linear in both the input size and the
# number of beta steps; the fit looks for C, D that make
# cost / ((size + C) * (b + D)) as flat as possible.

from dgoim import dgoim_run, efficiency_fit, size
from dgoim.corpus import church_app
from dgoim.cost import FitMember, format_fit

members = []
for n in range(2, 65):
    t = church_app(n)
    r = dgoim_run(t)
    members.append(FitMember(size(t), r.stats, sum(r.costs)))
    if n in (2, 8, 32, 64):
        print(f"n={n:2d} size={size(t):3d} b={r.stats.b:3d} s={r.stats.s:3d} "
              f"o={r.stats.o:5d} cost={sum(r.costs)}")

rep = efficiency_fit(members)
print(format_fit(rep, "church-app"))

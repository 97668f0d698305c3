# Terms become well-boxed graphs: every abstraction is a box, every shared
# variable meets in a contraction node.  DOT files go to a temp directory.

import tempfile
from collections import Counter
from pathlib import Path

from dgoim import initial_state, parse, step_rewrites_first, translate_term

t = parse(r"(\f. \x. f (f x)) (\y. y)")
g = translate_term(t).graph
print("nodes by kind:", dict(Counter(g.kind.values())))
print("boxes:", len(g.boxes), " well-boxed:", g.well_boxed_check() is None)

out = Path(tempfile.mkdtemp(prefix="dgoim-"))
s = initial_state(t)
i = 0
while True:
    if i % 10 == 0:
        (out / f"step_{i:03d}.dot").write_text(s.graph.to_dot(s.position, name=f"step{i}"))
    tr = step_rewrites_first(s)
    if tr is None:
        break
    i += 1
print(f"{i} transitions; DOT frames in {out}")
print("final token:", s.describe())

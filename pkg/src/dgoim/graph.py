"""Named well-boxed graphs over the eight generators.

Edges are identified by their source port ``(node, out_port)``.  Every edge of
a well-boxed graph has a source, so this is total, and an edge keeps its
identity for as long as its source node lives: rewiring only changes targets.
Open edges are the ones whose target is ``None``.

Port layout per kind::

    kind     premises (in)            conclusions (out)
    Ax       -                        0, 1
    Cut      0, 1                     -
    Tensor   0 (left), 1 (right)      0
    Par      0 (left), 1 (right)      0
    Bang     0 (box root)             0
    WhyNot   0 (from inside the box)  0
    Der      0                        0
    Con      0 .. n-1 (unordered)     0

Premise order of a ``Con`` node carries no meaning and is ignored by
:meth:`Graph.canonical_form`.
"""

from __future__ import annotations

import copy
from collections import deque
from dataclasses import dataclass
from typing import Optional

AX = "Ax"
CUT = "Cut"
TENSOR = "Tensor"
PAR = "Par"
BANG = "Bang"
WHYNOT = "WhyNot"
DER = "Der"
CON = "Con"
HOLE = "Hole"  # placeholder for the hole of a context translation; not a generator

GENERATORS = (AX, CUT, TENSOR, PAR, BANG, WHYNOT, DER, CON)
OUT_ARITY = {AX: 2, CUT: 0, TENSOR: 1, PAR: 1, BANG: 1, WHYNOT: 1, DER: 1, CON: 1}
IN_ARITY = {AX: 0, CUT: 2, TENSOR: 2, PAR: 2, BANG: 1, WHYNOT: 1, DER: 1}

UP = "up"
DOWN = "down"

Edge = tuple  # (source node, out port)


class GraphError(Exception):
    pass


@dataclass
class Box:
    principal: int
    aux: list
    members: set
    origin: int  # provenance: principal of the box in the initial graph it was copied from


@dataclass(frozen=True)
class Violation:
    clause: str
    node: Optional[int]
    message: str

    def __str__(self) -> str:
        return f"[{self.clause}] node {self.node}: {self.message}"


class NodeSupply:
    def __init__(self, start: int = 0):
        self.next = start

    def fresh(self) -> int:
        n = self.next
        self.next += 1
        return n


class Graph:
    def __init__(self, supply: NodeSupply | None = None):
        self.supply = supply or NodeSupply()
        self.kind: dict[int, str] = {}
        self.ins: dict[int, list] = {}
        self.outs: dict[int, int] = {}  # out arity; Hole nodes vary
        self.tgt: dict[Edge, Optional[int]] = {}
        self.boxes: dict[int, Box] = {}
        self.parent: dict[int, Optional[int]] = {}
        self.aux_of: dict[int, int] = {}
        self.root: Optional[Edge] = None

    # -- construction ---------------------------------------------------------

    def add_node(self, kind: str, ins=(), name: int | None = None, n_out: int | None = None) -> int:
        n = self.supply.fresh() if name is None else name
        if n in self.kind:
            raise GraphError(f"duplicate node name {n}")
        self.kind[n] = kind
        self.ins[n] = []
        self.outs[n] = OUT_ARITY[kind] if n_out is None else n_out
        self.parent[n] = None
        for p in range(self.outs[n]):
            self.tgt[(n, p)] = None
        for e in ins:
            self.attach(e, n)
        return n

    def attach(self, e: Edge, n: int) -> None:
        """Append ``e`` as the last premise of ``n``; ``e`` must be open."""
        if self.tgt.get(e, 0) is not None:
            raise GraphError(f"edge {e} is not an open edge")
        self.tgt[e] = n
        self.ins[n].append(e)

    def detach(self, e: Edge) -> None:
        n = self.tgt[e]
        if n is not None:
            self.ins[n].remove(e)
            self.tgt[e] = None

    def replace_edge(self, keep: Edge, old: Edge) -> None:
        """Let ``keep`` take over the target slot of ``old``; ``old`` is left open.

        ``keep`` must be open or about to be orphaned by a node deletion; its
        previous target, if any, is not updated.
        """
        t = self.tgt[old]
        self.tgt[keep] = t
        if t is not None:
            ins = self.ins[t]
            ins[ins.index(old)] = keep
        self.tgt[old] = None
        if self.root == old:
            self.root = keep

    def remove_node(self, n: int) -> None:
        par = self.parent[n]
        while par is not None:
            self.boxes[par].members.discard(n)
            par = self.parent[par]
        for p in range(self.outs[n]):
            del self.tgt[(n, p)]
        del self.kind[n], self.ins[n], self.outs[n], self.parent[n]
        self.aux_of.pop(n, None)

    def splice_out(self, n: int) -> Edge:
        """Delete a node with one premise and one conclusion, joining the two edges."""
        (e_in,) = self.ins[n]
        self.replace_edge(e_in, (n, 0))
        self.remove_node(n)
        return e_in

    def make_box(self, principal: int, aux: list, members, origin: int | None = None) -> Box:
        members = set(members)
        box = Box(principal, list(aux), members, principal if origin is None else origin)
        self.boxes[principal] = box
        for a in aux:
            self.aux_of[a] = principal
        for m in members:
            if self.parent[m] is None:
                self.parent[m] = principal
        return box

    # -- queries ----------------------------------------------------------------

    def node_count(self) -> int:
        return len(self.kind)

    def edge_count(self) -> int:
        return len(self.tgt)

    def open_edges(self) -> list:
        return [e for e, t in self.tgt.items() if t is None]

    def box_size(self, principal: int) -> int:
        b = self.boxes[principal]
        return len(b.members) + 1 + len(b.aux)

    def ancestors(self, principal: int) -> list:
        out = []
        p = self.parent[principal]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def other_out(self, e: Edge) -> Edge:
        n, p = e
        return (n, 1 - p)

    def snapshot(self) -> "Graph":
        g = copy.deepcopy(self)
        return g

    # -- box operations ---------------------------------------------------------

    def copy_box(self, principal: int) -> tuple[int, dict]:
        """Copy a box with its doors and nested boxes under fresh names.

        The copy's principal and auxiliary doors have open conclusions; the
        caller decides where they go.  Returns the new principal and the
        old-to-new node correspondence.
        """
        box = self.boxes[principal]
        nodes = sorted(box.members | {principal} | set(box.aux))
        mp = {n: self.supply.fresh() for n in nodes}
        for n in nodes:
            m = mp[n]
            self.kind[m] = self.kind[n]
            self.outs[m] = self.outs[n]
            self.ins[m] = []
            for p in range(self.outs[n]):
                self.tgt[(m, p)] = None
        for n in nodes:
            m = mp[n]
            for (s, p) in self.ins[n]:
                if s not in mp:
                    raise GraphError(f"edge from {s} enters box {principal}")
                e = (mp[s], p)
                self.tgt[e] = m
                self.ins[m].append(e)
            par = self.parent[n]
            self.parent[m] = mp.get(par, par)
            if n in self.aux_of:
                a = self.aux_of[n]
                self.aux_of[m] = mp.get(a, a)
        for n in nodes:
            if n in self.boxes:
                b = self.boxes[n]
                self.boxes[mp[n]] = Box(mp[n], [mp[a] for a in b.aux],
                                        {mp[x] for x in b.members}, b.origin)
        for anc in self.ancestors(principal):
            self.boxes[anc].members.update(mp.values())
        return mp[principal], mp

    def open_box(self, principal: int) -> int:
        """Delete the doors of a box, keeping its contents in place.

        Each door's premise takes over the door's conclusion.  Returns the
        number of doors deleted.
        """
        box = self.boxes.pop(principal)
        up = self.parent[principal]
        doors = [principal] + box.aux
        for m in box.members:
            if self.parent[m] == principal:
                self.parent[m] = up
        for d in box.aux:
            self.splice_out(d)
        self.splice_out(principal)
        return len(doors)

    # -- well-boxedness ---------------------------------------------------------

    def well_boxed_check(self) -> Optional[Violation]:
        """First violated condition, or None when the graph is well-boxed."""
        seen = set()
        for n, k in self.kind.items():
            if k == HOLE:
                return Violation("no-incoming", n, "context hole stands for incoming edges")
            if k not in GENERATORS:
                return Violation("generators", n, f"unknown kind {k}")
            if self.outs[n] != OUT_ARITY[k]:
                return Violation("generators", n, "wrong number of conclusions")
            if k != CON and len(self.ins[n]) != IN_ARITY[k]:
                return Violation("generators", n, f"{k} has {len(self.ins[n])} premises")
            for e in self.ins[n]:
                s = e[0]
                if s not in self.kind or e not in self.tgt:
                    return Violation("no-incoming", n, f"premise {e} has no source")
                if self.tgt[e] != n:
                    return Violation("edges", n, f"edge {e} target mismatch")
                if e in seen:
                    return Violation("edges", n, f"edge {e} used twice")
                seen.add(e)
        for e, t in self.tgt.items():
            if e[0] not in self.kind or e[1] >= self.outs[e[0]]:
                return Violation("edges", e[0], f"dangling edge record {e}")
            if t is not None and e not in seen:
                return Violation("edges", t, f"edge {e} missing from premises")
        if self.root is not None and (self.root not in self.tgt or self.tgt[self.root] is not None):
            return Violation("root", None, "root is not an open edge")

        whynot_owner: dict[int, int] = {}
        for p, box in self.boxes.items():
            if self.kind.get(p) != BANG:
                return Violation("box", p, "principal door is not a Bang node")
            for a in box.aux:
                if self.kind.get(a) != WHYNOT:
                    return Violation("box", a, "auxiliary door is not a WhyNot node")
                if a in whynot_owner:
                    return Violation("aux-unique", a, "auxiliary door of two boxes")
                whynot_owner[a] = p
            h = box.members
            doors = {p, *box.aux}
            if h & doors:
                return Violation("box", p, "door inside its own box")
            if not h <= self.kind.keys():
                return Violation("box", p, "box member does not exist")
            leaving = []
            for n in h:
                for e in self.ins[n]:
                    if e[0] not in h:
                        return Violation("no-incoming", n, f"edge {e} enters box {p}")
                for q in range(self.outs[n]):
                    t = self.tgt[(n, q)]
                    if t is None or t not in h:
                        leaving.append(((n, q), t))
            if not leaving:
                return Violation("box", p, "box has no outgoing edge")
            targets = sorted(t if t is not None else -1 for _, t in leaving)
            if targets != sorted(doors):
                return Violation("box", p, "outgoing edges of the box do not match its doors")
            for n in h:
                if n in self.boxes:
                    inner = self.boxes[n]
                    if not (inner.members | set(inner.aux)) <= h:
                        return Violation("nesting", n, f"box {n} crosses box {p}")
        for n, k in self.kind.items():
            if k == WHYNOT and n not in whynot_owner:
                return Violation("aux-unique", n, "WhyNot node is not an auxiliary door")
            if k == BANG and n not in self.boxes:
                return Violation("box", n, "Bang node without a box")
            if self.aux_of.get(n, whynot_owner.get(n)) != whynot_owner.get(n):
                return Violation("aux-unique", n, "stale auxiliary door record")

        containing: dict[int, list] = {}
        for p, box in self.boxes.items():
            for n in box.members:
                containing.setdefault(n, []).append(p)
        for n, ps in containing.items():
            ps.sort(key=lambda q: len(self.boxes[q].members))
            for a, b in zip(ps, ps[1:]):
                if not self.boxes[a].members <= self.boxes[b].members:
                    return Violation("nesting", n, f"boxes {a} and {b} overlap")
            if self.parent[n] != ps[0]:
                return Violation("nesting", n, "stale parent record")
        for n in self.kind:
            if n not in containing and self.parent[n] is not None:
                return Violation("nesting", n, "stale parent record")
        return None

    # -- canonical form ---------------------------------------------------------

    def _neighbours(self, n: int):
        if self.kind[n] != CON:
            for e in self.ins[n]:
                yield e[0]
        for p in range(self.outs[n]):
            t = self.tgt[(n, p)]
            if t is not None:
                yield t

    def _bfs(self, start: int, order: dict) -> list:
        new = []
        if start in order:
            return new
        order[start] = len(order)
        new.append(start)
        queue = deque([start])
        while queue:
            n = queue.popleft()
            for m in self._neighbours(n):
                if m not in order:
                    order[m] = len(order)
                    new.append(m)
                    queue.append(m)
        return new

    def _describe(self, n: int, order: dict) -> tuple:
        k = self.kind[n]
        outs = []
        for p in range(self.outs[n]):
            t = self.tgt[(n, p)]
            if t is None:
                outs.append((-3, -3))
            elif self.kind[t] == CON:
                outs.append((order.get(t, -1), -1))  # Con premises are unordered
            else:
                outs.append((order.get(t, -1), self.ins[t].index((n, p))))
        par = self.parent[n]
        aux = self.aux_of.get(n)
        return (k, len(self.ins[n]) if k in (CON, HOLE) else 0, tuple(outs),
                -2 if par is None else order.get(par, -1),
                -2 if aux is None else order.get(aux, -1))

    def _numbering(self, root: Optional[Edge]) -> dict:
        order: dict[int, int] = {}
        if root is not None:
            self._bfs(root[0], order)
        while len(order) < len(self.kind):
            cands = []
            for c in [n for n in order if self.kind[n] == CON]:
                for e in self.ins[c]:
                    if e[0] not in order:
                        cands.append(e[0])
            if not cands:
                cands = [n for n in self.kind if n not in order]
            best = None
            for s in dict.fromkeys(cands):
                trial = dict(order)
                new = self._bfs(s, trial)
                key = tuple(self._describe(m, trial) for m in new)
                if best is None or key < best[0]:
                    best = (key, s)
            self._bfs(best[1], order)
        return order

    def canonical_form(self, root: Optional[Edge] = None, token=None) -> bytes:
        """Name-independent serialization: equal forms mean isomorphic graphs.

        Names are ignored; kinds, ports (except ``Con`` premise order), box
        structure, the root edge and an optional token ``(edge, direction)``
        are respected.  Numbering is a breadth-first traversal from the root.
        Parts not connected to the root are numbered greedily by the smallest
        local description; ties between non-isomorphic parts are not resolved,
        so different forms do not prove non-isomorphism (see ``isomorphic``).
        """
        root = self.root if root is None else root
        order = self._numbering(root)
        nodes = sorted(order, key=order.get)
        parts = [repr([self._describe(n, order) for n in nodes])]
        if root is not None:
            parts.append(f"root={order[root[0]]}.{root[1]}")
        if token is not None:
            (s, p), d = token
            parts.append(f"token={order[s]}.{p}.{d}")
        return "|".join(parts).encode()

    def to_networkx(self, root: Optional[Edge] = None, token=None):
        """Labelled digraph for isomorphism tests; parallel edges share one label."""
        import networkx as nx

        root = self.root if root is None else root
        G = nx.DiGraph()
        for n, k in self.kind.items():
            mark = []
            if root is not None and root[0] == n:
                mark.append(("root", root[1]))
            if token is not None and token[0][0] == n:
                mark.append(("token", token[0][1], token[1]))
            arity = len(self.ins[n]) if k in (CON, HOLE) else 0
            G.add_node(n, label=(k, arity, self.outs[n], tuple(mark)))
        labels: dict = {}
        for (s, p), t in self.tgt.items():
            if t is not None:
                port = -1 if self.kind[t] == CON else self.ins[t].index((s, p))
                labels.setdefault((s, t), []).append(("edge", p, port))
        for n, par in self.parent.items():
            if par is not None:
                labels.setdefault((n, par), []).append(("parent", 0, 0))
        for n, a in self.aux_of.items():
            labels.setdefault((n, a), []).append(("aux", 0, 0))
        for (s, t), ls in labels.items():
            G.add_edge(s, t, label=tuple(sorted(ls)))
        return G

    def isomorphic(self, other: "Graph", token=None, other_token=None) -> bool:
        """Exact test: names ignored, everything ``canonical_form`` records respected."""
        if self.canonical_form(token=token) == other.canonical_form(token=other_token):
            return True
        import networkx as nx
        from networkx.algorithms.isomorphism import categorical_edge_match, categorical_node_match

        return nx.is_isomorphic(self.to_networkx(token=token), other.to_networkx(token=other_token),
                                node_match=categorical_node_match("label", None),
                                edge_match=categorical_edge_match("label", None))

    def subgraph(self, nodes) -> "Graph":
        """Induced subgraph; edges leaving ``nodes`` become open."""
        nodes = set(nodes)
        g = Graph(NodeSupply(self.supply.next))
        for n in sorted(nodes):
            g.kind[n] = self.kind[n]
            g.outs[n] = self.outs[n]
            g.ins[n] = [e for e in self.ins[n] if e[0] in nodes]
            g.parent[n] = self.parent[n] if self.parent[n] in nodes else None
            for p in range(self.outs[n]):
                t = self.tgt[(n, p)]
                g.tgt[(n, p)] = t if t in nodes else None
            if n in self.aux_of and self.aux_of[n] in nodes:
                g.aux_of[n] = self.aux_of[n]
        for p, b in self.boxes.items():
            if p in nodes:
                g.boxes[p] = Box(p, list(b.aux), set(b.members), b.origin)
        return g

    def box_canonical(self, principal: int) -> bytes:
        b = self.boxes[principal]
        sub = self.subgraph(b.members | {principal} | set(b.aux))
        return sub.canonical_form(root=(principal, 0))

    # -- export -----------------------------------------------------------------

    def to_dot(self, position=None, name: str = "G") -> str:
        """Graphviz source: one dashed cluster per box, token edge in red."""
        lines = [f"digraph {name} {{", "  node [shape=box, fontsize=10];"]
        children: dict = {}
        for n in sorted(self.kind):
            children.setdefault(self.parent[n], []).append(n)

        def emit_level(container, indent):
            for n in children.get(container, []):
                k = self.kind[n]
                label = f"{k}{len(self.ins[n])}" if k == CON else k
                lines.append(f'{indent}n{n} [label="{label} {n}"];')
                if k == BANG and n in self.boxes:
                    lines.append(f"{indent}subgraph cluster_{n} {{")
                    lines.append(f"{indent}  style=dashed;")
                    emit_level(n, indent + "  ")
                    lines.append(f"{indent}}}")

        emit_level(None, "  ")
        tok = position[0] if position else None
        for (s, p), t in sorted(self.tgt.items()):
            attr = ' [color=red, penwidth=2, label="token"]' if (s, p) == tok else ""
            if t is None:
                lines.append(f'  open_{s}_{p} [shape=point];')
                lines.append(f"  n{s} -> open_{s}_{p}{attr};")
            else:
                lines.append(f"  n{s} -> n{t}{attr};")
        lines.append("}")
        return "\n".join(lines)

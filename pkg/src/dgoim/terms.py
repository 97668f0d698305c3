"""Lambda-terms with explicit substitutions, evaluation contexts and free variables.

Free variables are counted with multiplicity (a ``collections.Counter`` from
names to occurrence counts), because the graph translation allocates one open
edge per occurrence.

Evaluation contexts are stored inside-out: a persistent list of frames whose
first element sits directly around the hole.  Adding a frame next to the hole
is constant time and shares the rest, so the machine rules that work near the
hole never copy the whole context.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union


@dataclass(frozen=True, order=True)
class Name:
    """A variable name: an interned integer plus a label used for printing."""

    uid: int
    label: str = field(default="", compare=False)

    def __str__(self) -> str:
        return self.label or f"v{self.uid}"


class NameSupply:
    """Monotone counter issuing names that were never issued before."""

    def __init__(self, start: int = 0):
        self._next = start

    def reserve(self, names: Iterable[Name]) -> None:
        for n in names:
            if n.uid >= self._next:
                self._next = n.uid + 1

    def fresh(self, base: str = "v") -> Name:
        uid = self._next
        self._next += 1
        return Name(uid, f"{base.split('_')[0]}_{uid}")

    @property
    def next_uid(self) -> int:
        return self._next


@dataclass(frozen=True)
class Var:
    name: Name

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Lam:
    var: Name
    body: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True)
class Sub:
    """Explicit substitution ``body[var <- arg]``."""

    body: "Term"
    var: Name
    arg: "Term"

    def __str__(self) -> str:
        return show(self)


Term = Union[Var, Lam, App, Sub]


# -- multisets ---------------------------------------------------------------

def remove_all(m: Counter, x: Name) -> Counter:
    """``M \\ x``: drop every occurrence of ``x``."""
    out = Counter(m)
    out.pop(x, None)
    return out


def fv(t: Term) -> Counter:
    if isinstance(t, Var):
        return Counter([t.name])
    if isinstance(t, Lam):
        return remove_all(fv(t.body), t.var)
    if isinstance(t, App):
        return fv(t.fun) + fv(t.arg)
    if isinstance(t, Sub):
        return remove_all(fv(t.body), t.var) + fv(t.arg)
    raise TypeError(f"not a term: {t!r}")


def occurs(x: Name, t: Term) -> bool:
    """Whether ``x`` occurs free in ``t`` (cheaper than building ``fv``)."""
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            if u.name == x:
                return True
        elif isinstance(u, Lam):
            if u.var != x:
                stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.fun)
            stack.append(u.arg)
        else:
            stack.append(u.arg)
            if u.var != x:
                stack.append(u.body)
    return False


def size(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Lam):
        return size(t.body) + 1
    if isinstance(t, App):
        return size(t.fun) + size(t.arg) + 1
    return size(t.body) + size(t.arg) + 1


def is_pure(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, Lam):
        return is_pure(t.body)
    if isinstance(t, App):
        return is_pure(t.fun) and is_pure(t.arg)
    return False


def is_value(t: Term) -> bool:
    return isinstance(t, Lam)


def binders(t: Term) -> list[Name]:
    """Every binding occurrence in ``t`` (abstractions and substitutions), in order."""
    out = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Lam):
            out.append(u.var)
            stack.append(u.body)
        elif isinstance(u, App):
            stack.append(u.arg)
            stack.append(u.fun)
        elif isinstance(u, Sub):
            out.append(u.var)
            stack.append(u.arg)
            stack.append(u.body)
    return out


def all_names(t: Term) -> set[Name]:
    names = set(binders(t))
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            names.add(u.name)
        elif isinstance(u, Lam):
            stack.append(u.body)
        elif isinstance(u, App):
            stack.extend((u.fun, u.arg))
        else:
            stack.extend((u.body, u.arg))
    return names


def is_closed_well_named(t: Term) -> bool:
    if fv(t):
        return False
    bs = binders(t)
    return len(bs) == len(set(bs))


def is_well_named(t: Term) -> bool:
    bs = binders(t)
    free = fv(t)
    return len(bs) == len(set(bs)) and not any(b in free for b in bs)


def rename_fresh(v: Term, supply: NameSupply) -> Term:
    """Copy ``v`` with every bound variable replaced by a fresh name."""

    def go(t: Term, env: dict) -> Term:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Lam):
            y = supply.fresh(t.var.label)
            return Lam(y, go(t.body, {**env, t.var: y}))
        if isinstance(t, App):
            return App(go(t.fun, env), go(t.arg, env))
        y = supply.fresh(t.var.label)
        return Sub(go(t.body, {**env, t.var: y}), y, go(t.arg, env))

    return go(v, {})


def to_debruijn(t: Term, env: tuple = ()):
    """Locally-nameless form: bound variables become indices, free ones stay names.

    Only used to compare terms up to alpha-equivalence in tests and reports.
    """
    if isinstance(t, Var):
        for i, n in enumerate(env):
            if n == t.name:
                return ("b", i)
        return ("f", t.name)
    if isinstance(t, Lam):
        return ("lam", to_debruijn(t.body, (t.var,) + env))
    if isinstance(t, App):
        return ("app", to_debruijn(t.fun, env), to_debruijn(t.arg, env))
    return ("sub", to_debruijn(t.body, (t.var,) + env), to_debruijn(t.arg, env))


def alpha_eq(t: Term, u: Term) -> bool:
    return to_debruijn(t) == to_debruijn(u)


# -- evaluation contexts -----------------------------------------------------

@dataclass(frozen=True)
class AppFrame:
    """``E t``: the hole side is the function."""

    arg: Term


@dataclass(frozen=True)
class SubFrame:
    """``E[x <- t]``."""

    var: Name
    arg: Term


@dataclass(frozen=True)
class HereditaryFrame:
    """``E'<x>[x <- E]``: ``around`` is ``E'`` with its hole already filled by ``x``."""

    around: "Ctx"
    var: Name


Frame = Union[AppFrame, SubFrame, HereditaryFrame]


class Ctx:
    """Immutable cons list of frames, innermost first."""

    __slots__ = ("frame", "rest", "_len")

    def __init__(self, frame=None, rest: "Ctx | None" = None):
        self.frame = frame
        self.rest = rest
        self._len = 0 if rest is None else rest._len + 1

    @classmethod
    def of(cls, frames: Iterable = (), tail: "Ctx | None" = None) -> "Ctx":
        out = HOLE if tail is None else tail
        for fr in reversed(list(frames)):
            out = Ctx(fr, out)
        return out

    def push(self, frame) -> "Ctx":
        """Add ``frame`` directly around the hole."""
        return Ctx(frame, self)

    def nodes(self):
        node = self
        while node.rest is not None:
            yield node
            node = node.rest

    def __iter__(self):
        for node in self.nodes():
            yield node.frame

    def __len__(self) -> int:
        return self._len

    def __add__(self, outer: "Ctx") -> "Ctx":
        """``self`` plugged into ``outer``."""
        return Ctx.of(self, as_ctx(outer))

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Ctx.of(tuple(self)[i])
        return tuple(self)[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Ctx, tuple)):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(a == b for a, b in zip(self, other))

    def __hash__(self) -> int:
        return hash(tuple(self))

    def __repr__(self) -> str:
        return f"Ctx{tuple(self)!r}"


Context = Ctx
HOLE: Context = Ctx()


def as_ctx(e) -> Ctx:
    return e if isinstance(e, Ctx) else Ctx.of(e)


def app_left(e: Context, u: Term) -> Context:
    return as_ctx(e) + Ctx.of([AppFrame(u)])


def sub_outer(e: Context, x: Name, u: Term) -> Context:
    return as_ctx(e) + Ctx.of([SubFrame(x, u)])


def hereditary(around: Context, x: Name, e: Context) -> Context:
    return as_ctx(e) + Ctx.of([HereditaryFrame(as_ctx(around), x)])


def plug_term(e: Context, t: Term) -> Term:
    for fr in e:
        if isinstance(fr, AppFrame):
            t = App(t, fr.arg)
        elif isinstance(fr, SubFrame):
            t = Sub(t, fr.var, fr.arg)
        else:
            t = Sub(plug_term(fr.around, Var(fr.var)), fr.var, t)
    return t


def plug_ctx(e: Context, inner: Context) -> Context:
    return as_ctx(inner) + as_ctx(e)


def fv_ctx(e: Context, m: Counter) -> Counter:
    m = Counter(m)
    for fr in e:
        if isinstance(fr, AppFrame):
            m = m + fv(fr.arg)
        elif isinstance(fr, SubFrame):
            m = remove_all(m, fr.var) + fv(fr.arg)
        else:
            m = remove_all(fv_ctx(fr.around, Counter([fr.var])), fr.var) + m
    return m


def occurs_ctx(x: Name, e: Context) -> bool:
    """Whether ``fv_ctx(e, {})`` mentions ``x``."""
    found = False
    for fr in e:
        if isinstance(fr, AppFrame):
            found = found or occurs(x, fr.arg)
        elif isinstance(fr, SubFrame):
            found = (found and fr.var != x) or occurs(x, fr.arg)
        else:
            found = found or (fr.var != x and occurs_ctx(x, fr.around))
    return found


def is_subst_ctx(e: Context) -> bool:
    return all(isinstance(fr, SubFrame) for fr in e)


def ctx_is_pure(e: Context) -> bool:
    for fr in e:
        if isinstance(fr, HereditaryFrame):
            if not ctx_is_pure(fr.around):
                return False
        elif not is_pure(fr.arg):
            return False
    return True


# -- printing ----------------------------------------------------------------

def show(t: Term) -> str:
    if isinstance(t, Var):
        return str(t.name)
    if isinstance(t, Lam):
        return f"\\{t.var}. {show(t.body)}"
    if isinstance(t, App):
        f = show(t.fun)
        if isinstance(t.fun, Lam):
            f = f"({f})"
        a = show(t.arg)
        if not isinstance(t.arg, Var):
            a = f"({a})"
        return f"{f} {a}"
    b = show(t.body)
    if not isinstance(t.body, Var):
        b = f"({b})"
    return f"{b}[{t.var} <- {show(t.arg)}]"


_HOLE_MARK = Var(Name(-1, "<.>"))


def show_ctx(e: Context) -> str:
    return show(plug_term(e, _HOLE_MARK))


def max_uid(t: Term) -> int:
    return max((n.uid for n in all_names(t)), default=-1)


def supply_for(*terms: Term) -> NameSupply:
    """A supply whose names avoid everything occurring in ``terms``."""
    s = NameSupply()
    s.reserve(itertools.chain.from_iterable(all_names(t) for t in terms))
    return s

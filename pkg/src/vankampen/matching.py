"""Hall's marriage lemma and its capacitated form, with certificates.

Either an assignment is returned or a set X whose neighbourhood is too small
(|R(X)| < |X|, or total capacity of R(X) below |X|).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional


@dataclass
class RelationInstance:
    A: list
    B: list
    R: set
    f: Optional[dict] = None

    def image(self, X: Iterable) -> set:
        X = set(X)
        return {y for x, y in self.R if x in X}

    def neighbours(self) -> dict:
        order = {y: i for i, y in enumerate(self.B)}
        nb: dict = {x: [] for x in self.A}
        for x, y in self.R:
            if x in nb and y in order:
                nb[x].append(y)
        for x in nb:
            nb[x].sort(key=order.__getitem__)
        return nb


@dataclass
class MatchResult:
    ok: bool
    assignment: dict = field(default_factory=dict)
    deficient: list = field(default_factory=list)

    def describe(self, inst: RelationInstance) -> str:
        if self.ok:
            body = ", ".join(f"{x}->{self.assignment[x]}" for x in inst.A)
            return f"assignment {body}"
        img = [y for y in inst.B if y in inst.image(self.deficient)]
        return (f"deficient X={{{', '.join(map(str, self.deficient))}}} "
                f"R(X)={{{', '.join(map(str, img))}}}")


def capacitated_assignment(inst: RelationInstance) -> MatchResult:
    """h: A -> B with x R h(x) and |h^-1(y)| <= f(y), or a violating X."""
    cap = inst.f if inst.f is not None else {y: 1 for y in inst.B}
    nb = inst.neighbours()
    owner: dict = {y: [] for y in inst.B}
    h: dict = {}

    def augment(x, seen_y: set, seen_x: set) -> bool:
        seen_x.add(x)
        for y in nb[x]:
            if y in seen_y:
                continue
            seen_y.add(y)
            if len(owner[y]) < cap.get(y, 0):
                owner[y].append(x)
                h[x] = y
                return True
            for x2 in list(owner[y]):
                if x2 not in seen_x and augment(x2, seen_y, seen_x):
                    owner[y].remove(x2)
                    owner[y].append(x)
                    h[x] = y
                    return True
        return False

    for x in inst.A:
        seen_x: set = set()
        if not augment(x, set(), seen_x):
            # everything reachable from x by alternating paths forms the certificate
            order = {a: i for i, a in enumerate(inst.A)}
            return MatchResult(False, deficient=sorted(seen_x, key=order.__getitem__))
    return MatchResult(True, assignment=dict(h))


def hall_injection(inst: RelationInstance) -> MatchResult:
    if inst.f is not None:
        raise ValueError("hall_injection takes an instance without capacities")
    return capacitated_assignment(inst)


def verify(inst: RelationInstance, res: MatchResult) -> bool:
    cap = inst.f if inst.f is not None else {y: 1 for y in inst.B}
    if res.ok:
        if set(res.assignment) != set(inst.A):
            return False
        if any((x, y) not in inst.R for x, y in res.assignment.items()):
            return False
        load: dict = {}
        for y in res.assignment.values():
            load[y] = load.get(y, 0) + 1
        return all(n <= cap.get(y, 0) for y, n in load.items())
    X = res.deficient
    if not X or not set(X) <= set(inst.A):
        return False
    return sum(cap.get(y, 0) for y in inst.image(X)) < len(X)


def parse_instance(text: str) -> RelationInstance:
    """Parse ``A=1,2; B=p; R=1:p,2:p; f=p:1``."""
    fields: dict[str, str] = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part.strip()!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    unknown = set(fields) - {"A", "B", "R", "f"}
    if unknown or "A" not in fields or "B" not in fields:
        raise ValueError("instance needs A=..., B=... and optionally R=..., f=...")

    def items(s: str) -> list[str]:
        return [t.strip() for t in s.split(",") if t.strip()]

    A, B = items(fields["A"]), items(fields["B"])
    R = set()
    for t in items(fields.get("R", "")):
        x, _, y = t.partition(":")
        if x not in A or y not in B:
            raise ValueError(f"pair {t!r} not in A x B")
        R.add((x, y))
    f = None
    if "f" in fields:
        f = {y: 0 for y in B}
        for t in items(fields["f"]):
            y, _, c = t.partition(":")
            if y not in B:
                raise ValueError(f"capacity for unknown element {y!r}")
            f[y] = int(c)
            if f[y] < 0:
                raise ValueError("capacities must be nonnegative")
    return RelationInstance(A, B, R, f)

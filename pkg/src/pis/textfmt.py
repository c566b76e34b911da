"""Line-oriented text format for protocol interaction systems.

::

    system <name>
    component <cid>
    port <cid>.<pid> alphabet <action> ...
    behavior <cid> init <state> ...
    behavior <cid> trans <state> <action> <state>
    protocol <cid>.<pid> init <state> ...
    protocol <cid>.<pid> trans <state> <action|tau> <state>
    interaction <action> ...

``#`` starts a comment.  Components must be declared before their ports
and ports before their protocol lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lts import TAU, Lts, LtsError
from .system import PortRef, System, validate

RESERVED = "tau"


@dataclass(frozen=True)
class SyntaxIssue:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


class ParseError(ValueError):
    """All syntax and validation problems found in one document."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("\n".join(str(i) for i in self.issues))


def _tokens(line: str):
    """Yield (column, token) pairs; columns are 1-based."""
    line = line.split("#", 1)[0]
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


class _LtsDraft:
    def __init__(self):
        self.init = None
        self.trans = []


def parse_system(text: str) -> System:
    """Parse and validate a system document.

    Raises :class:`ParseError` listing every syntax error, or every
    validation violation when the syntax is fine.
    """
    system = read_system(text)
    violations = validate(system)
    if violations:
        raise ParseError(violations)
    return system


def read_system(text: str) -> System:
    """Parse a document without checking the well-formedness rules."""
    issues: list = []
    name = None
    components: list = []
    ports: dict = {}
    alphabets: dict = {}
    behaviors: dict = {}
    protocols: dict = {}
    interactions: set = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = list(_tokens(raw))
        if not toks:
            continue

        def err(col, msg, _line=lineno):
            issues.append(SyntaxIssue(_line, col, msg))

        (kcol, kw), rest = toks[0], toks[1:]
        if kw == "system":
            if len(rest) != 1:
                err(kcol, "expected: system <name>")
            elif name is not None:
                err(rest[0][0], "duplicate system line")
            else:
                name = rest[0][1]
        elif kw == "component":
            if len(rest) != 1:
                err(kcol, "expected: component <cid>")
                continue
            col, cid = rest[0]
            if "." in cid:
                err(col, f"component id {cid!r} must not contain '.'")
            elif cid in ports:
                err(col, f"component {cid!r} declared twice")
            else:
                components.append(cid)
                ports[cid] = []
        elif kw == "port":
            if len(rest) < 2 or rest[1][1] != "alphabet":
                err(kcol, "expected: port <cid>.<pid> alphabet <action> ...")
                continue
            col, ref = rest[0]
            try:
                p = PortRef.parse(ref)
            except ValueError as exc:
                err(col, str(exc))
                continue
            if p.component not in ports:
                err(col, f"port {p} declared before its component {p.component!r}")
                continue
            if p in alphabets:
                err(col, f"port {p} declared twice")
                continue
            acts = set()
            for acol, a in rest[2:]:
                if a == RESERVED:
                    err(acol, "'tau' is reserved and cannot be an action")
                else:
                    acts.add(a)
            ports[p.component].append(p.port)
            alphabets[p] = acts
        elif kw in ("behavior", "protocol"):
            if len(rest) < 2 or rest[1][1] not in ("init", "trans"):
                err(kcol, f"expected: {kw} <owner> init|trans ...")
                continue
            col, owner = rest[0]
            if kw == "protocol":
                try:
                    owner = PortRef.parse(owner)
                except ValueError as exc:
                    err(col, str(exc))
                    continue
                if owner not in alphabets:
                    err(col, f"protocol for undeclared port {owner}")
                    continue
                draft = protocols.setdefault(owner, _LtsDraft())
            else:
                draft = behaviors.setdefault(owner, _LtsDraft())
            mode, args = rest[1][1], rest[2:]
            if mode == "init":
                if not args:
                    err(rest[1][0], "init needs at least one state")
                elif draft.init is not None:
                    err(rest[1][0], f"second init line for {owner}")
                else:
                    draft.init = [a for _, a in args]
            else:
                if len(args) != 3:
                    err(rest[1][0], "expected: trans <state> <action> <state>")
                    continue
                (_, s), (acol, a), (_, t) = args
                if a == RESERVED:
                    if kw == "behavior":
                        err(acol, "component behaviors cannot use tau")
                        continue
                    a = TAU
                draft.trans.append((s, a, t))
        elif kw == "interaction":
            if not rest:
                err(kcol, "interaction needs at least one action")
                continue
            acts = set()
            for acol, a in rest:
                if a == RESERVED:
                    err(acol, "'tau' cannot occur in an interaction")
                acts.add(a)
            interactions.add(frozenset(acts))
        else:
            err(kcol, f"unknown keyword {kw!r}; expected one of "
                      "system, component, port, behavior, protocol, interaction")

    end = len(text.splitlines()) + 1

    def finish(owner, draft, what):
        if draft is None or draft.init is None:
            issues.append(SyntaxIssue(end, 1, f"{what} {owner} has no init line"))
            return None
        try:
            return Lts.build(draft.trans, draft.init)
        except LtsError as exc:
            issues.append(SyntaxIssue(end, 1, f"{what} {owner}: {exc}"))
            return None

    beh_lts = {}
    for c in components:
        lts = finish(c, behaviors.get(c), "behavior of")
        if lts is not None:
            beh_lts[c] = lts
    for c in behaviors:
        if c not in ports:
            issues.append(SyntaxIssue(end, 1, f"behavior given for undeclared component {c!r}"))
    prot_lts = {}
    for p in alphabets:
        lts = finish(p, protocols.get(p), "protocol of")
        if lts is not None:
            prot_lts[p] = lts

    if issues:
        raise ParseError(issues)
    return System(
        components=components,
        ports=ports,
        alphabets=alphabets,
        interactions=interactions,
        behaviors=beh_lts,
        protocols=prot_lts,
        name=name or "sys",
    )


def _check_token(tok) -> str:
    tok = str(tok)
    if not tok or any(ch.isspace() for ch in tok) or "#" in tok:
        raise ValueError(f"{tok!r} cannot be written as a token")
    return tok


def _lts_lines(head: str, lts: Lts, allow_tau: bool) -> list:
    lines = [f"{head} init " + " ".join(_check_token(s) for s in sorted(lts.initials))]
    for s, a, t in lts.sorted_transitions():
        if a is TAU:
            if not allow_tau:
                raise ValueError(f"{head} has a tau transition")
            a = RESERVED
        lines.append(f"{head} trans {_check_token(s)} {_check_token(a)} {_check_token(t)}")
    return lines


def render_protocol(p: PortRef, lts: Lts) -> str:
    return "\n".join(_lts_lines(f"protocol {p}", lts, True)) + "\n"


def render_system(system: System) -> str:
    """Inverse of :func:`parse_system` (isolated non-initial states are not representable)."""
    out = [f"system {_check_token(system.name)}"]
    out += [f"component {_check_token(c)}" for c in system.components]
    for p in system.port_refs:
        acts = " ".join(_check_token(a) for a in sorted(system.alphabets[p]))
        out.append(f"port {p} alphabet {acts}".rstrip())
    for c in system.components:
        out += _lts_lines(f"behavior {c}", system.behaviors[c], False)
    for p in system.port_refs:
        out += _lts_lines(f"protocol {p}", system.protocols[p], True)
    for alpha in system.sorted_interactions():
        out.append("interaction " + " ".join(sorted(alpha)))
    return "\n".join(out) + "\n"

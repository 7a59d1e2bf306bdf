"""Command-line front end with a small declarative statement language.

Statements (one per line; ``#`` starts a comment):

    group <name> = <descriptor>
    spec <name> = from <group>
    spec <name> = chain [<flags>]
    spec show <name>
    smashing enumerate <spec>
    smashing validate <spec> "<chain>"
    smashing classify <spec> "<chain>"
    tc <spec> [<spec> ...]
    thomason <spec>
    tor <spec> "<module>" "<module>"
    fiveterm <spec> "<module>" "<chain>"
    member <spec> "<complex>" "<chain>"
    snf <file>
    mazet verify <file>

Invocation: ``smashlab run <script>`` or ``smashlab -e "<statement>"``; the
``--json`` flag (or ``SMASHLAB_FORMAT=json``) switches every command to the
structured rendering ``{command, status, data}``.  Exit codes: 0 success,
1 domain validation failure, 2 parse failure.  Output is deterministic:
repeated runs produce byte-identical bytes.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field

from . import homology, ring, smashing, spectrum as spectrum_mod
from .errors import ParseError, SmashlabError
from .groups import build_group, parse_descriptor, render_descriptor
from .scanning import TextCursor
from .spectrum import ValuationSpectrum, describe_spectrum, render_spectrum

OK = "ok"
VALIDATION_FAILURE = "validation_failure"
PARSE_FAILURE = "parse_failure"

_EXIT = {OK: 0, VALIDATION_FAILURE: 1, PARSE_FAILURE: 2}


@dataclass
class Session:
    """Named immutable bindings accumulated by a script."""

    bindings: dict = field(default_factory=dict)

    def bind(self, name, value):
        if name in self.bindings:
            raise SmashlabError("name %r is already bound" % name)
        self.bindings[name] = value

    def group(self, name):
        val = self.bindings.get(name)
        if not hasattr(val, "descriptor"):
            raise SmashlabError("%r is not a bound group" % name)
        return val

    def spec(self, name):
        val = self.bindings.get(name)
        if not isinstance(val, ValuationSpectrum):
            raise SmashlabError("%r is not a bound spectrum" % name)
        return val


@dataclass(frozen=True)
class CommandResult:
    command: str
    status: str
    text: tuple  # lines
    data: object

    @property
    def exit_code(self):
        return _EXIT[self.status]


@dataclass(frozen=True)
class Statement:
    command: str  # normalized head, e.g. "smashing enumerate"
    args: tuple  # raw argument strings
    source: str


# ---------------------------------------------------------------------------
# statement parsing


def _read_argument(cur: TextCursor) -> str:
    """One argument: a quoted string, a balanced {...}/[...] literal, or a word."""
    ch = cur.peek()
    if ch == '"':
        cur.expect('"')
        start = cur.pos
        while cur.pos < len(cur.text) and cur.text[cur.pos] != '"':
            cur.pos += 1
        if cur.pos >= len(cur.text):
            raise cur.error("unterminated string")
        out = cur.text[start : cur.pos]
        cur.pos += 1
        return out
    if ch in "{[":
        open_ch, close_ch = ch, "}" if ch == "{" else "]"
        cur.skip_ws()
        start = cur.pos
        depth = 0
        while cur.pos < len(cur.text):
            c = cur.text[cur.pos]
            if c in "{[":
                depth += 1
            elif c in "}]":
                depth -= 1
            cur.pos += 1
            if depth == 0:
                return cur.text[start : cur.pos]
        raise cur.error("unbalanced %r" % open_ch)
    cur.skip_ws()
    start = cur.pos
    while cur.pos < len(cur.text) and not cur.text[cur.pos].isspace():
        cur.pos += 1
    if cur.pos == start:
        raise cur.error("expected an argument")
    return cur.text[start : cur.pos]


_HEADS = {
    "group": (1, None),
    "spec": (1, None),
    "smashing enumerate": (1, 1),
    "smashing validate": (2, 2),
    "smashing classify": (2, 2),
    "tc": (1, None),
    "thomason": (1, 1),
    "tor": (3, 3),
    "fiveterm": (3, 3),
    "member": (3, 3),
    "snf": (1, 1),
    "mazet verify": (1, 1),
    "spec show": (1, 1),
}


def parse_statement(line) -> Statement:
    cur = TextCursor(line)
    head = cur.match_name()
    if head is None:
        raise cur.error("expected a command")
    if head in ("smashing", "mazet"):
        sub = cur.match_name()
        if sub is None:
            raise cur.error("%s needs a subcommand" % head)
        head = "%s %s" % (head, sub)
    elif head == "spec":
        save = cur.pos
        sub = cur.match_name()
        if sub == "show":
            head = "spec show"
        else:
            cur.pos = save
    if head not in _HEADS:
        raise cur.error("unknown command %r" % head)
    args = []
    if head == "group":
        name = cur.match_name()
        if name is None:
            raise cur.error("group needs a name")
        cur.expect("=")
        rest = cur.text[cur.pos :].strip()
        if not rest:
            raise cur.error("group needs a descriptor")
        _syntax_check_descriptor(cur, rest)
        return Statement("group", (name, rest), line)
    if head == "spec":
        name = cur.match_name()
        if name is None:
            raise cur.error("spec needs a name")
        cur.expect("=")
        kind = cur.match_name()
        if kind == "from":
            gname = cur.match_name()
            if gname is None:
                raise cur.error("spec ... = from needs a group name")
            cur.expect_end()
            return Statement("spec", (name, "from", gname), line)
        if kind == "chain":
            literal = _read_argument(cur)
            cur.expect_end()
            _syntax_check_spectrum(cur, literal)
            return Statement("spec", (name, "chain", literal), line)
        raise cur.error("spec definitions are 'from <group>' or 'chain [...]'")
    lo, hi = _HEADS[head]
    while not cur.at_end():
        args.append(_read_argument(cur))
    if len(args) < lo or (hi is not None and len(args) > hi):
        raise cur.error("%s takes %s argument(s)" % (head, lo if hi == lo else "%d+" % lo))
    return Statement(head, tuple(args), line)


def _syntax_check_descriptor(cur, text):
    # surface syntax only; semantic guards (e.g. Zloc(1)) fire at execution
    from .errors import InvalidDescriptor

    try:
        parse_descriptor(text)
    except InvalidDescriptor:
        pass
    except ParseError as e:
        raise cur.error("bad group descriptor: %s" % e.bare_message)


def _syntax_check_spectrum(cur, literal):
    from .errors import InvalidFlags, InvalidSpectrum

    try:
        spectrum_mod.parse_spectrum(literal)
    except (InvalidSpectrum, InvalidFlags):
        pass
    except ParseError as e:
        raise cur.error("bad spectrum literal: %s" % e.bare_message)


def parse_script(text):
    """Statements, one per nonblank noncomment line, with positions on error."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            statements.append(parse_statement(line))
        except ParseError as e:
            raise ParseError(
                "in %r: %s" % (line, e.bare_message), lineno, (e.column or 1)
            )
    return statements


# ---------------------------------------------------------------------------
# execution


def execute(session: Session, stmt: Statement) -> CommandResult:
    try:
        return _dispatch(session, stmt)
    except ParseError as e:
        return CommandResult(stmt.command, PARSE_FAILURE, ("parse failure: %s" % e,), {"error": str(e)})
    except SmashlabError as e:
        return CommandResult(
            stmt.command,
            VALIDATION_FAILURE,
            ("%s: %s" % (type(e).__name__, e),),
            {"error": str(e), "kind": type(e).__name__},
        )


def _dispatch(session, stmt):
    handler = _HANDLERS[stmt.command]
    return handler(session, stmt)


def _ok(command, lines, data):
    return CommandResult(command, OK, tuple(lines), data)


def _cmd_group(session, stmt):
    name, text = stmt.args
    group = build_group(parse_descriptor(text))
    session.bind(name, group)
    rendered = render_descriptor(group.descriptor)
    return _ok("group", ["group %s = %s" % (name, rendered)], {"name": name, "group": rendered})


def _cmd_spec(session, stmt):
    name = stmt.args[0]
    if stmt.args[1] == "from":
        spec = spectrum_mod.spectrum_from_group(session.group(stmt.args[2]))
    else:
        spec = spectrum_mod.parse_spectrum(stmt.args[2])
    session.bind(name, spec)
    rendered = render_spectrum(spec)
    return _ok("spec", ["spec %s = %s" % (name, rendered)], {"name": name, "spectrum": rendered})


def _cmd_spec_show(session, stmt):
    spec = session.spec(stmt.args[0])
    lines = describe_spectrum(spec)
    return _ok("spec show", lines, {"spectrum": render_spectrum(spec), "primes": lines})


def _cmd_enumerate(session, stmt):
    spec = session.spec(stmt.args[0])
    chains = smashing.enumerate_smashing(spec)
    rows = []
    lines = ["%d chains" % len(chains)]
    for c in chains:
        text = smashing.render_chain(spec, c)
        flat = smashing.is_flat(spec, c)
        rows.append({"chain": text, "flat": flat})
        lines.append("%s%s" % (text, "  flat" if flat else ""))
    return _ok("smashing enumerate", lines, {"count": len(chains), "chains": rows})


def _cmd_validate(session, stmt):
    spec = session.spec(stmt.args[0])
    chain = smashing.parse_chain(spec, stmt.args[1])
    res = smashing.validate_chain(spec, chain)
    if res.ok:
        return _ok("smashing validate", ["valid"], {"valid": True})
    return CommandResult(
        "smashing validate",
        VALIDATION_FAILURE,
        ("violation: %s (%s)" % (res.kind, res.detail),),
        {"valid": False, "kind": res.kind, "detail": res.detail},
    )


def _cmd_classify(session, stmt):
    spec = session.spec(stmt.args[0])
    chain = smashing.parse_chain(spec, stmt.args[1])
    d = smashing.classify_chain(spec, chain)
    ring_name = smashing.ring_text(spec, d)
    kernel = None if d.kernel is None else spec.prime_name(d.kernel)
    comps = []
    for comp in d.components:
        if comp[0] == "interval":
            comps.append([spec.prime_name(comp[1]), spec.prime_name(comp[2])])
        else:
            comps.append(["family", spec.slot_name(comp[1])])
    lines = [
        "ring: %s" % ring_name,
        "kernel: %s" % ("R" if kernel is None else kernel),
        "flat: %s" % _bool(d.is_flat),
    ]
    return _ok(
        "smashing classify",
        lines,
        {
            "ring": ring_name,
            "kernel": kernel,
            "flat": d.is_flat,
            "compactly_generated": d.is_compactly_generated,
            "zero_ring": d.zero_ring,
            "components": comps,
        },
    )


def _cmd_tc(session, stmt):
    specs = [session.spec(name) for name in stmt.args]
    value = smashing.tc_holds_family(specs)
    return _ok("tc", [_bool(value)], {"tc": value, "specs": list(stmt.args)})


def _cmd_thomason(session, stmt):
    spec = session.spec(stmt.args[0])
    sets = smashing.thomason_sets(spec)
    texts = [smashing.render_thomason(spec, t) for t in sets]
    return _ok("thomason", ["%d up-sets" % len(sets)] + texts, {"count": len(sets), "sets": texts})


def _cmd_tor(session, stmt):
    spec = session.spec(stmt.args[0])
    group = spec.group
    if group is None:
        raise SmashlabError("tor needs a spectrum built from a value group")
    m = homology.parse_module(group, stmt.args[1])
    n = homology.parse_module(group, stmt.args[2])
    t0 = homology.tor0(m, n)
    t1 = homology.tor1(m, n)
    return _ok(
        "tor",
        ["tor0: %s" % homology.render_module(t0), "tor1: %s" % homology.render_module(t1)],
        {"tor0": homology.render_module(t0), "tor1": homology.render_module(t1)},
    )


def _render_sum(parts):
    if not parts:
        return "0"
    return " (+) ".join(homology.render_module(p) for p in parts)


def _cmd_fiveterm(session, stmt):
    spec = session.spec(stmt.args[0])
    if spec.group is None:
        raise SmashlabError("fiveterm needs a spectrum built from a value group")
    m = homology.parse_module(spec.group, stmt.args[1])
    chain = smashing.parse_chain(spec, stmt.args[2])
    ft = homology.five_term(spec, m, chain)
    data = {
        "t1": [homology.render_module(x) for x in ft.t1],
        "xm": [homology.render_module(x) for x in ft.xm],
        "tensored": [homology.render_module(x) for x in ft.tensored],
        "xup": [homology.render_module(x) for x in ft.xup],
        "kernel": homology.render_module(ft.kernel),
    }
    lines = [
        "t1: %s" % _render_sum(ft.t1),
        "xm: %s" % _render_sum(ft.xm),
        "tensored: %s" % _render_sum(ft.tensored),
        "xup: %s" % _render_sum(ft.xup),
    ]
    return _ok("fiveterm", lines, data)


def _cmd_member(session, stmt):
    spec = session.spec(stmt.args[0])
    if spec.group is None:
        raise SmashlabError("member needs a spectrum built from a value group")
    x = homology.parse_complex(spec.group, stmt.args[1])
    chain = smashing.parse_chain(spec, stmt.args[2])
    value = homology.smashing_membership(spec, x, chain)
    return _ok("member", [_bool(value)], {"member": value})


def _cmd_snf(session, stmt):
    with open(stmt.args[0], "r", encoding="utf-8") as fh:
        mat = ring.parse_matrix_file(fh.read())
    u, d, v, diag = ring.snf(mat)
    diag_text = [("oo" if val is ring.INFINITY else mat.group.render(val)) for val in diag]
    rows = [[ring.render_ring_element(x) for x in row] for row in d.rows]
    lines = ["diag values: %s" % ", ".join(diag_text)]
    lines += ["; ".join(row) for row in rows]
    data = {
        "diag_values": diag_text,
        "d": rows,
        "u": [[ring.render_ring_element(x) for x in row] for row in u.rows],
        "v": [[ring.render_ring_element(x) for x in row] for row in v.rows],
    }
    return _ok("snf", lines, data)


def _parse_mazet_file(text):
    from .groups import parse_descriptor as pd

    group = None
    fieldobj = ring.QQ
    chain_text = None
    s_text = None
    rows = {"P": [], "Y": [], "Q": []}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("mazet file lines look like 'key: value', got %r" % line)
        key, value = [part.strip() for part in line.split(":", 1)]
        if key == "group":
            group = build_group(pd(value))
        elif key == "field":
            fieldobj = ring.parse_field(value)
        elif key == "chain":
            chain_text = value
        elif key == "s":
            s_text = value
        elif key in rows:
            rows[key].append(value)
        else:
            raise ParseError("unknown mazet file key %r" % key)
    if group is None or chain_text is None or s_text is None:
        raise ParseError("mazet file needs group:, chain: and s: entries")
    if not (rows["P"] and rows["Y"] and rows["Q"]):
        raise ParseError("mazet file needs P:, Y: and Q: rows")
    spec = spectrum_mod.spectrum_from_group(group)
    chain = smashing.parse_chain(spec, chain_text)

    def parse_row(line):
        out = []
        for cell in line.split(";"):
            cur = TextCursor(cell)
            out.append(ring.parse_element_from(group, cur, fieldobj))
            cur.expect_end()
        return out

    s_vals = parse_row(s_text)
    p = ring.matrix(group, fieldobj, [parse_row(rows["P"][0])])
    y = ring.matrix(group, fieldobj, [parse_row(r) for r in rows["Y"]])
    q = ring.matrix(group, fieldobj, [parse_row(r)[0:1] for r in rows["Q"]])
    return spec, chain, s_vals, p, y, q


def _cmd_mazet_verify(session, stmt):
    with open(stmt.args[0], "r", encoding="utf-8") as fh:
        spec, chain, s_vals, p, y, q = _parse_mazet_file(fh.read())
    accepted = ring.verify_mazet(spec, chain, s_vals, p, y, q)
    return _ok("mazet verify", ["accepted: %s" % _bool(accepted)], {"accepted": accepted})


def _bool(b):
    return "true" if b else "false"


_HANDLERS = {
    "group": _cmd_group,
    "spec": _cmd_spec,
    "spec show": _cmd_spec_show,
    "smashing enumerate": _cmd_enumerate,
    "smashing validate": _cmd_validate,
    "smashing classify": _cmd_classify,
    "tc": _cmd_tc,
    "thomason": _cmd_thomason,
    "tor": _cmd_tor,
    "fiveterm": _cmd_fiveterm,
    "member": _cmd_member,
    "snf": _cmd_snf,
    "mazet verify": _cmd_mazet_verify,
}


# ---------------------------------------------------------------------------
# rendering and entry point


def render(result: CommandResult, format="text") -> bytes:
    if format == "json":
        payload = {"command": result.command, "status": result.status, "data": result.data}
        return (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
    return ("\n".join(result.text) + "\n").encode("utf-8")


def run_statements(text, out, format) -> int:
    try:
        statements = parse_script(text)
    except ParseError as e:
        out.write(render(CommandResult("parse", PARSE_FAILURE, (str(e),), {"error": str(e)}), format))
        return 2
    session = Session()
    code = 0
    for stmt in statements:
        result = execute(session, stmt)
        out.write(render(result, format))
        if result.exit_code != 0:
            return result.exit_code
    return code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    format = "json" if os.environ.get("SMASHLAB_FORMAT") == "json" else "text"
    if "--json" in argv:
        argv.remove("--json")
        format = "json"
    out = sys.stdout.buffer
    if len(argv) == 2 and argv[0] == "run":
        try:
            with open(argv[1], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            out.write(render(CommandResult("run", VALIDATION_FAILURE, (str(e),), {"error": str(e)}), format))
            return 1
        return run_statements(text, out, format)
    if len(argv) == 2 and argv[0] == "-e":
        return run_statements(argv[1], out, format)
    usage = "usage: smashlab [--json] run <script> | smashlab [--json] -e \"<statement>\""
    out.write((usage + "\n").encode("utf-8"))
    return 2


if __name__ == "__main__":
    raise SystemExit(main())

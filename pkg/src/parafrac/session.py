"""Line-oriented session files.

::

    ring R = poly(char=101, vars=[a, b, c, d])
    module M = cyclic(R; a*c, a*d, b*c, b*d)
    sop X on M = [a + c, b + d]
    box B = [1..4, 1..4]
    task T = table(M, X, B)

Declarations may appear in any order.  Module kinds are ``cyclic``,
``ideal`` (an ideal presented as a module), ``presentation`` (explicit
relations), ``quotient`` and ``idealization``.  ``ideal I in R = [...]``
declares a plain list of ring elements.  ``#`` starts a comment.
"""

import re
from dataclasses import dataclass, field

from .errors import ParafracError, ParseError
from .field import field_from_characteristic
from .invariants import ExponentBox
from .modules import (FPModule, Idealization, ParamSystem, cyclic, ideal_as_module,
                      idealization, quotient_by)
from .orders import parse_order
from .poly import PolyRing

_DECL = re.compile(r"\s*(ring|module|sop|box|ideal|task)\s+([A-Za-z_][A-Za-z0-9_]*)\s*"
                   r"(?:(on|in)\s+([A-Za-z_][A-Za-z0-9_]*)\s*)?=\s*")
_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_-]*)\s*\(")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*$")

TASK_KINDS = ("gb", "nf", "length", "mult", "limclo", "table", "unmixed", "ddcheck",
              "aideals", "psop", "hk", "bridge", "verify")


@dataclass
class Piece:
    """A piece of source text with its 1-based line and column."""

    text: str
    line: int
    column: int

    def error(self, message, offset=0):
        return ParseError(message, self.line, self.column + offset)


@dataclass
class Decl:
    kind: str
    name: str
    line: int
    target: str = None             # the ``on``/``in`` name
    head: str = None               # call name for module/task bodies
    args: list = field(default_factory=list)       # list of Piece (names, numbers)
    elements: list = field(default_factory=list)   # list of Piece (ring elements)
    groups: list = field(default_factory=list)     # extra ``;`` groups (presentation)
    options: dict = field(default_factory=dict)
    canonical: str = ""


def _split_top(text, sep, base_col):
    """Split on ``sep`` outside brackets, keeping columns."""
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], base_col + start))
            start = i + 1
    out.append((text[start:], base_col + start))
    pieces = []
    for chunk, col in out:
        stripped = chunk.strip()
        lead = len(chunk) - len(chunk.lstrip())
        pieces.append((stripped, col + lead))
    return pieces


def _bracketed(text, line, col, open_ch, close_ch, what):
    t = text.rstrip()
    if not (t.startswith(open_ch) and t.endswith(close_ch)):
        raise ParseError(f"expected {what} in {open_ch}{close_ch}", line, col)
    return t[1:-1], col + 1


def _strip_comment(raw):
    return raw.split("#", 1)[0]


def parse_declarations(text: str):
    decls = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _DECL.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected a declaration (ring, module, sop, box, ideal or task)",
                             lineno, col)
        kind, name, prep, target = m.group(1), m.group(2), m.group(3), m.group(4)
        if name in seen:
            raise ParseError(f"name {name!r} already declared on line {seen[name]}",
                             lineno, m.start(2) + 1)
        seen[name] = lineno
        if kind == "sop" and prep != "on":
            raise ParseError("sop declarations need 'on <module>'", lineno, m.end() + 1)
        if kind == "ideal" and prep != "in":
            raise ParseError("ideal declarations need 'in <ring>'", lineno, m.end() + 1)
        if kind in ("ring", "module", "box", "task") and prep:
            raise ParseError(f"unexpected '{prep}' in a {kind} declaration", lineno,
                             m.start(3) + 1)
        body = line[m.end():]
        col = m.end() + 1
        d = Decl(kind, name, lineno, target)
        if kind in ("sop", "ideal"):
            inner, icol = _bracketed(body, lineno, col, "[", "]", "a list of elements")
            d.elements = [Piece(t, lineno, c) for t, c in _split_top(inner, ",", icol) if t]
        elif kind == "box":
            inner, icol = _bracketed(body, lineno, col, "[", "]", "ranges")
            for t, c in _split_top(inner, ",", icol):
                mm = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", t)
                if not mm:
                    raise ParseError("expected a range lo..hi", lineno, c)
                d.args.append((int(mm.group(1)), int(mm.group(2))))
        else:
            cm = _CALL.match(body.strip())
            if not cm or not body.rstrip().endswith(")"):
                raise ParseError("expected name(...)", lineno, col)
            lead = len(body) - len(body.lstrip())
            d.head = cm.group(1)
            inner = body.strip()[cm.end():-1]
            icol = col + lead + cm.end()
            _parse_call(d, inner, icol)
        decls.append(d)
    return decls


def _parse_call(d: Decl, inner, col):
    groups = _split_top(inner, ";", col)
    first_text, first_col = groups[0]
    if d.kind == "ring":
        if d.head != "poly":
            raise ParseError("rings are declared with poly(...)", d.line, col)
        for t, c in _split_top(first_text, ",", first_col):
            mm = re.fullmatch(r"([a-z]+)\s*=\s*(.+)", t, re.S)
            if not mm:
                raise ParseError("expected key=value", d.line, c)
            d.options[mm.group(1)] = Piece(mm.group(2).strip(), d.line, c + t.index(mm.group(2)))
        return
    d.args = [Piece(t, d.line, c) for t, c in _split_top(first_text, ",", first_col) if t]
    rest = groups[1:]
    if d.kind == "module" and d.head == "presentation":
        # presentation(R; degrees=[..]; [v1], [v2], ...)
        if len(rest) < 1:
            raise ParseError("presentation needs a degrees group", d.line, col)
        dt, dc = rest[0]
        mm = re.fullmatch(r"degrees\s*=\s*\[(.*)\]", dt)
        if not mm:
            raise ParseError("expected degrees=[...]", d.line, dc)
        try:
            d.options["degrees"] = [int(v) for v in mm.group(1).split(",") if v.strip()]
        except ValueError:
            raise ParseError("degrees must be integers", d.line, dc) from None
        for gt, gc in rest[1:]:
            for vt, vc in _split_top(gt, ",", gc):
                if vt:
                    inner_v, ivc = _bracketed(vt, d.line, vc, "[", "]", "a vector")
                    d.groups.append([Piece(t, d.line, c) for t, c in _split_top(inner_v, ",", ivc)])
        return
    for gt, gc in rest:
        d.elements += [Piece(t, d.line, c) for t, c in _split_top(gt, ",", gc) if t]


# -- resolution ---------------------------------------------------------------------------

class Session:
    """A resolved session: rings, modules, sops, boxes, ideals and tasks by name."""

    def __init__(self, decls):
        self.decls = {d.name: d for d in decls}
        self.order = [d.name for d in decls]
        self.objects = {}
        self._resolving = []
        for name in self.order:
            self.resolve(name)

    # lookup -------------------------------------------------------------
    def resolve(self, name, piece: Piece = None, want=None):
        d = self.decls.get(name)
        if d is None:
            where = piece or Piece(name, 0, 0)
            raise where.error(f"unknown name {name!r}")
        if want and d.kind not in want:
            raise (piece or Piece(name, d.line, 1)).error(
                f"{name!r} is a {d.kind}, expected {' or '.join(want)}")
        if name in self.objects:
            return self.objects[name]
        if name in self._resolving:
            cycle = " -> ".join(self._resolving[self._resolving.index(name):] + [name])
            raise (piece or Piece(name, d.line, 1)).error(f"cyclic reference: {cycle}")
        self._resolving.append(name)
        try:
            obj = getattr(self, "_make_" + d.kind)(d)
        except ParseError:
            raise
        except ParafracError as exc:
            raise ParseError(str(exc), d.line, 1) from exc
        finally:
            self._resolving.pop()
        self.objects[name] = obj
        return obj

    def ring_of(self, name, piece):
        obj = self.resolve(name, piece, ("ring", "module"))
        if isinstance(obj, PolyRing):
            return obj
        return self.module(name, piece).ring

    def module(self, name, piece=None) -> FPModule:
        obj = self.resolve(name, piece, ("module",))
        return obj.module if isinstance(obj, Idealization) else obj

    def _elements(self, ring, pieces, homogeneous=True):
        out = []
        for p in pieces:
            try:
                f = ring.parse(p.text)
            except ParseError as exc:
                raise ParseError(exc.message, p.line, p.column + (exc.column or 1) - 1) from None
            if homogeneous and not f.is_homogeneous()[0]:
                raise p.error(f"{f} is not homogeneous")
            out.append(f)
        return out

    # constructors ---------------------------------------------------------
    def _make_ring(self, d):
        opts = d.options
        for key in opts:
            if key not in ("char", "vars", "order"):
                raise opts[key].error(f"unknown ring option {key!r}")
        if "vars" not in opts:
            raise ParseError("ring needs vars=[...]", d.line, 1)
        try:
            char = int(opts["char"].text) if "char" in opts else 32003
        except ValueError:
            raise opts["char"].error("char must be an integer") from None
        inner, col = _bracketed(opts["vars"].text, d.line, opts["vars"].column, "[", "]",
                                "variable names")
        names = [t for t, _ in _split_top(inner, ",", col) if t]
        try:
            order = parse_order(opts["order"].text if "order" in opts else "grevlex")
        except ValueError as exc:
            raise opts["order"].error(str(exc)) from None
        try:
            ring = PolyRing(field_from_characteristic(char), names, order)
        except ValueError as exc:
            where = opts["char"] if "char" in opts and "prime" in str(exc) else opts["vars"]
            raise where.error(str(exc)) from None
        d.canonical = (f"ring {d.name} = poly(char={char}, vars=[{', '.join(names)}], "
                       f"order={order})")
        return ring

    def _make_module(self, d):
        head = d.head
        if head in ("cyclic", "ideal", "presentation", "quotient"):
            if len(d.args) != 1:
                raise ParseError(f"{head} takes one ring or module name", d.line, 1)
            src = d.args[0]
        if head == "cyclic":
            ring = self.resolve(src.text, src, ("ring",))
            gens = self._elements(ring, d.elements)
            mod = cyclic(ring, gens, d.name)
            d.canonical = f"module {d.name} = cyclic({src.text}; {', '.join(map(str, gens))})"
            return mod
        if head == "ideal":
            ring = self.resolve(src.text, src, ("ring",))
            gens = self._elements(ring, d.elements)
            d.canonical = f"module {d.name} = ideal({src.text}; {', '.join(map(str, gens))})"
            return ideal_as_module(ring, gens, d.name)
        if head == "quotient":
            base = self.module(src.text, src)
            elems = self._elements(base.ring, d.elements)
            d.canonical = f"module {d.name} = quotient({src.text}; {', '.join(map(str, elems))})"
            return quotient_by(base, elems, d.name)
        if head == "presentation":
            ring = self.resolve(src.text, src, ("ring",))
            degs = d.options["degrees"]
            rels = []
            for group in d.groups:
                if len(group) != len(degs):
                    raise group[0].error(f"vector has {len(group)} entries, expected {len(degs)}")
                rels.append(ring.vector(self._elements(ring, group)))
            vec_txt = ", ".join(str(v) for v in rels)
            d.canonical = (f"module {d.name} = presentation({src.text}; degrees=[{', '.join(map(str, degs))}]"
                           + (f"; {vec_txt}" if rels else "") + ")")
            return FPModule(ring, len(degs), rels, degs, d.name)
        if head == "idealization":
            if len(d.args) != 2:
                raise ParseError("idealization takes (base, module)", d.line, 1)
            b, m = d.args
            if b.text == d.name or m.text == d.name:
                piece = b if b.text == d.name else m
                raise piece.error(f"cyclic reference: {d.name} -> {d.name}")
            base_obj = self.resolve(b.text, b, ("ring", "module"))
            if not isinstance(base_obj, PolyRing):
                base_obj = self.module(b.text, b)
            mod = self.module(m.text, m)
            d.canonical = f"module {d.name} = idealization({b.text}, {m.text})"
            return idealization(base_obj, mod, name=d.name)
        raise ParseError(f"unknown module kind {head!r}", d.line, 1)

    def _make_sop(self, d):
        mod = self.module(d.target, Piece(d.target, d.line, 1))
        elems = self._elements(mod.ring, d.elements)
        d.canonical = f"sop {d.name} on {d.target} = [{', '.join(map(str, elems))}]"
        return ParamSystem(mod, elems, d.name)

    def _make_ideal(self, d):
        ring = self.ring_of(d.target, Piece(d.target, d.line, 1))
        elems = self._elements(ring, d.elements)
        d.canonical = f"ideal {d.name} in {d.target} = [{', '.join(map(str, elems))}]"
        return elems

    def _make_box(self, d):
        try:
            box = ExponentBox(tuple(d.args))
        except ValueError as exc:
            raise ParseError(str(exc), d.line, 1) from None
        d.canonical = f"box {d.name} = {box}"
        return box

    def _make_task(self, d):
        if d.head not in TASK_KINDS:
            raise ParseError(f"unknown task {d.head!r}", d.line, 1)
        args = list(d.args)
        if d.head == "verify":
            if not args:
                raise ParseError("verify needs a scenario name", d.line, 1)
            from .scenarios import canonical_name
            try:
                canonical_name(args[0].text)
            except KeyError:
                raise args[0].error(f"unknown scenario {args[0].text!r}") from None
            args = args[1:]
        resolved = []
        for a in args:
            if re.fullmatch(r"-?\d+", a.text):
                resolved.append(int(a.text))
            elif _NAME.match(a.text):
                resolved.append(self.resolve(a.text, a))
            else:
                raise a.error(f"expected a name or an integer, got {a.text!r}")
        task = Task(d.name, d.head, [p.text for p in d.args], resolved, d)
        _check_task(task, self)
        elems = ""
        if d.elements:
            ring = self._task_ring(task)
            parsed = self._elements(ring, d.elements, homogeneous=False)
            task.elements = parsed
            elems = "; " + ", ".join(map(str, parsed))
        d.canonical = f"task {d.name} = {d.head}({', '.join(p.text for p in d.args)}{elems})"
        return task

    def _task_ring(self, task):
        for a in task.args:
            if isinstance(a, FPModule):
                return a.ring
            if isinstance(a, Idealization):
                return a.ring
            if isinstance(a, PolyRing):
                return a
        raise task.decl_error("task elements need a ring or module argument")

    # output ---------------------------------------------------------------
    def to_text(self) -> str:
        return "\n".join(self.decls[n].canonical for n in self.order) + "\n"

    def __eq__(self, other):
        return isinstance(other, Session) and self.to_text() == other.to_text()

    def tasks(self):
        return [self.objects[n] for n in self.order if self.decls[n].kind == "task"]


@dataclass
class Task:
    name: str
    kind: str
    arg_names: list
    args: list
    decl: Decl
    elements: list = field(default_factory=list)

    def decl_error(self, message):
        return ParseError(message, self.decl.line, 1)


_SIGNATURES = {
    "gb": ((FPModule, Idealization, list),),
    "nf": ((FPModule, Idealization),),
    "length": ((FPModule, Idealization),),
    "mult": ((FPModule, Idealization), ParamSystem),
    "limclo": ((FPModule, Idealization), ParamSystem),
    "table": ((FPModule, Idealization), ParamSystem, ExponentBox),
    "unmixed": ((FPModule, Idealization), ParamSystem),
    "ddcheck": ((FPModule, Idealization), ParamSystem, ExponentBox),
    "aideals": ((FPModule, Idealization),),
    "psop": ((FPModule, Idealization),),
    "hk": ((FPModule, Idealization), (list, int), int),
    "bridge": (list, int),
}


def _check_task(task: Task, session: Session):
    sig = _SIGNATURES.get(task.kind)
    if sig is None:
        return
    args = task.args
    if task.kind == "hk" and len(args) == 2:
        sig = sig[:1] + (int,)
    if len(args) != len(sig):
        raise task.decl_error(f"{task.kind} expects {len(sig)} arguments, got {len(args)}")
    for a, want in zip(args, sig):
        if not isinstance(a, want):
            raise task.decl_error(f"argument {a!r} has the wrong kind for {task.kind}")
    if task.kind in ("table", "ddcheck"):
        x, box = args[1], args[2]
        if box.d != len(x):
            raise task.decl_error(f"box has {box.d} ranges but the sop has {len(x)} elements")
    if task.kind in ("mult", "limclo", "table", "unmixed", "ddcheck"):
        mod = args[0].module if isinstance(args[0], Idealization) else args[0]
        if args[1].module is not mod:
            raise task.decl_error("the sop is declared on a different module")


def parse_session(text: str) -> Session:
    return Session(parse_declarations(text))

"""Command-line entry point: ``parafrac run`` and ``parafrac verify``."""

import argparse
import csv
import hashlib
import inspect
import io
import json
import sys
import time
import warnings
from dataclasses import dataclass, field
from importlib import resources

from . import scenarios
from .errors import ParafracError, ParseError, StabilizationError
from .groebner import Submodule
from .hilbert import INFINITE
from .hilbert_kunz import e_hk_estimate, hk_function, j_hk_bridge
from .invariants import (DEFAULT_CAP, NotFound, a_ideals, is_dd_sequence_box, limit_chain,
                         limit_closure, multiplicity, p_estimate, p_standard_sop, pf_estimate, table,
                         unmixed_component)
from .modules import Idealization, koszul_homology_lengths
from .session import Session, Task, parse_session

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class ResultEnvelope:
    task: str
    kind: str
    inputs_digest: str
    outputs: dict
    metadata: dict = field(default_factory=dict)
    verdict: str = None           # "pass", "fail" or None for plain computations
    table: object = None          # InvariantTable for CSV output

    def to_dict(self):
        return {"task": self.task, "kind": self.kind, "inputs_digest": self.inputs_digest,
                "outputs": self.outputs, "metadata": self.metadata, "verdict": self.verdict}


def _num(v):
    return "infinite" if v is INFINITE else v


def _gens(sub: Submodule):
    """Generators of a submodule as strings (polynomials for rank one)."""
    if sub.rank == 1:
        return [str(g.component(0)) for g in sub.gens]
    return [str(g) for g in sub.gens]


def _mod(obj):
    return obj.module if isinstance(obj, Idealization) else obj


def _digest(session: Session, task: Task, opts) -> str:
    h = hashlib.sha256()
    h.update(session.to_text().encode())
    h.update(f"\ntask={task.name}\ncap={opts.cap}\nseed={opts.seed}\n".encode())
    return h.hexdigest()


# -- task kinds ---------------------------------------------------------------------------

def _run_gb(task, opts):
    (obj,) = task.args
    if isinstance(obj, list):
        ring = obj[0].ring
        gb = Submodule.ideal(ring, obj).gb()
    else:
        gb = _mod(obj).relations.gb()
    return {"gb": [str(v) for v in (gb.polynomials() if gb.rank == 1 else gb.elements)]}, {}, None


def _run_nf(task, opts):
    m = _mod(task.args[0])
    if m.rank != 1:
        raise ParseError("nf is available for cyclic modules only", task.decl.line, 1)
    gb = m.relations.gb()
    return {"nf": [str(gb.normal_form(f)) for f in task.elements]}, {}, None


def _run_length(task, opts):
    m = _mod(task.args[0])
    return {"length": _num(m.length()), "dim": m.dim()}, {}, None


def _run_mult(task, opts):
    m, x = _mod(task.args[0]), task.args[1]
    return {"multiplicity": multiplicity(m, x),
            "koszul_lengths": [_num(v) for v in koszul_homology_lengths(m, x.elements)]}, {}, None


def _run_limclo(task, opts):
    m, x = _mod(task.args[0]), task.args[1]
    res = limit_chain(m, x, None, opts.cap)
    lim = limit_closure(m, x, None, opts.cap)
    meta = {"stabilized_at": res.index, "note": res.note}
    return {"generators": _gens(lim), "colength": res.colength}, meta, None


def _run_table(task, opts):
    m, x, box = _mod(task.args[0]), task.args[1], task.args[2]
    tbl = table(m, x, box, opts.cap, opts.threads)
    p, pf = p_estimate(tbl), pf_estimate(tbl)
    out = {"header": tbl.header(), "rows": [list(r) for r in tbl.csv_rows()],
           "multiplicity": tbl.multiplicity,
           "p_estimate": p.degree, "pf_estimate": pf.degree}
    meta = {"stabilized_at": [r.stabilized_at for r in tbl.rows],
            "estimate_label": p.label}
    return out, meta, None, tbl


def _run_unmixed(task, opts):
    m, x = _mod(task.args[0]), task.args[1]
    u = unmixed_component(m, x, opts.cap)
    out = {"generators": [str(g.component(0)) if m.rank == 1 else str(g)
                          for g in u.submodule.gb().elements],
           "quotient_length": _num(u.quotient.length())}
    return out, {"checked_powers": list(u.checked_powers), "note": u.note}, None


def _run_ddcheck(task, opts):
    m, x, box = _mod(task.args[0]), task.args[1], task.args[2]
    cert = is_dd_sequence_box(m, x.elements, box)
    out = {"dd_sequence": cert.passed, "e": cert.e, "reason": cert.reason,
           "counterexample": repr(cert.counterexample) if cert.counterexample else None}
    return out, {"box": str(box)}, None


def _run_aideals(task, opts):
    m = _mod(task.args[0])
    ai = a_ideals(m)
    out = {"dim": ai.dim, "a": [_gens(a) for a in ai.a], "cohomology_lengths":
           [_num(v) for v in ai.lengths], "dim_quotient": ai.dim_quotient()}
    return out, {}, None


def _run_psop(task, opts):
    m = _mod(task.args[0])
    try:
        x = p_standard_sop(m, seed=opts.seed)
    except NotFound as exc:
        return {"sop": None, "reason": str(exc)}, {"seed": opts.seed}, "fail"
    return {"sop": [str(e) for e in x.elements]}, {"seed": opts.seed}, None


def _run_hk(task, opts):
    a = _mod(task.args[0])
    if len(task.args) == 2:
        gens, e_max = a.ring.gens, task.args[1]
    else:
        gens, e_max = task.args[1], task.args[2]
    s = hk_function(a, gens, e_max)
    out = {"values": [list(v) for v in s.values]}
    if len(s.values) >= 2:
        est = e_hk_estimate(s, a.dim())
        out.update(estimate=str(est.value), residual=str(est.residual),
                   extrapolated=str(est.extrapolated))
    return out, {"truncated": s.truncated, "notice": s.notice}, None


def _run_bridge(task, opts):
    gens, e_max = task.args
    tbl = j_hk_bridge(gens[0].ring, gens, e_max, opts.cap)
    rows = [[r.q, r.J, r.frobenius_length, r.direct_length] for r in tbl.rows]
    return ({"header": ["q", "J", "hk_length", "direct_length"], "rows": rows},
            {}, "pass" if tbl.agree else "fail")


def _run_verify(task, opts):
    name = scenarios.canonical_name(task.arg_names[0])
    fn = scenarios.SCENARIOS[name]
    args = list(task.args)
    if name == "hk-bridge":
        args = [args[0][0].ring] + args
    elif name != "idealization-additivity":
        args = [_mod(a) for a in args]
    params = inspect.signature(fn).parameters
    kwargs = {}
    if "cap" in params:
        kwargs["cap"] = opts.cap
    if "seed" in params:
        kwargs["seed"] = opts.seed
    v = fn(*args, **kwargs)
    return {"scenario": name, "details": _jsonable(v.details)}, {}, "pass" if v.passed else "fail"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if obj is INFINITE:
        return "infinite"
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


_RUNNERS = {
    "gb": _run_gb, "nf": _run_nf, "length": _run_length, "mult": _run_mult,
    "limclo": _run_limclo, "table": _run_table, "unmixed": _run_unmixed,
    "ddcheck": _run_ddcheck, "aideals": _run_aideals, "psop": _run_psop, "hk": _run_hk,
    "bridge": _run_bridge, "verify": _run_verify,
}


def run_task(session: Session, task: Task, opts) -> ResultEnvelope:
    start = time.perf_counter()
    res = _RUNNERS[task.kind](task, opts)
    out, meta, verdict = res[:3]
    tbl = res[3] if len(res) > 3 else None
    meta = dict(meta, cap=opts.cap)
    if opts.timings:
        meta["seconds"] = round(time.perf_counter() - start, 3)
    return ResultEnvelope(task.name, task.kind, _digest(session, task, opts),
                          _jsonable(out), _jsonable(meta), verdict, tbl)


# -- output -----------------------------------------------------------------------------

def _csv_text(env: ResultEnvelope) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if env.table is not None:
        w.writerow(env.table.header())
        w.writerows(env.table.csv_rows())
    elif "rows" in env.outputs and "header" in env.outputs:
        w.writerow(env.outputs["header"])
        w.writerows(env.outputs["rows"])
    else:
        w.writerow(["key", "value"])
        for k in sorted(env.outputs):
            v = env.outputs[k]
            w.writerow([k, v if isinstance(v, (int, str)) else json.dumps(v, sort_keys=True)])
        if env.verdict is not None:
            w.writerow(["verdict", env.verdict])
    return buf.getvalue()


def render(envelopes, fmt: str) -> str:
    if fmt == "json":
        data = [e.to_dict() for e in envelopes]
        return json.dumps(data[0] if len(data) == 1 else data, indent=2, sort_keys=True) + "\n"
    if len(envelopes) == 1:
        return _csv_text(envelopes[0])
    parts = []
    for e in envelopes:
        parts.append(f"# task {e.task} ({e.kind})\n" + _csv_text(e))
    return "\n".join(parts)


# -- commands ------------------------------------------------------------------------------

def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def execute(text: str, task_name, opts, out=None, err=None) -> int:
    """Parse, run and print; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        session = parse_session(text)
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    tasks = session.tasks()
    if task_name is not None:
        tasks = [t for t in tasks if t.name == task_name]
        if not tasks:
            print(f"error: no task named {task_name!r}", file=err)
            return EXIT_INPUT
    if not tasks:
        print("error: the session declares no tasks", file=err)
        return EXIT_INPUT
    envelopes = []
    for t in tasks:
        try:
            envelopes.append(run_task(session, t, opts))
        except StabilizationError as exc:
            print(f"error: task {t.name}: {exc}", file=err)
            return EXIT_CAP
        except (ParafracError, ValueError) as exc:
            print(f"error: task {t.name}: {exc}", file=err)
            return EXIT_INPUT
    out.write(render(envelopes, opts.format))
    failed = [e.task for e in envelopes if e.verdict == "fail"]
    for name in failed:
        print(f"verdict: task {name} FAILED", file=err)
    return EXIT_FAIL if failed else EXIT_PASS


def bundled_sessions():
    root = resources.files("parafrac") / "sessions"
    return sorted(p.name[:-3] for p in root.iterdir() if p.name.endswith(".pf"))


def bundled_text(name: str) -> str:
    return (resources.files("parafrac") / "sessions" / f"{name}.pf").read_text(encoding="utf-8")


def _cmd_run(opts):
    try:
        text = _read_source(opts.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return execute(text, opts.task, opts)


def _cmd_verify(opts):
    if opts.list or not opts.name:
        aliases = {}
        for short, long in scenarios.ALIASES.items():
            aliases.setdefault(long, []).append(short)
        for name in bundled_sessions():
            extra = ", ".join(a for a in aliases.get(name, []) if a != name)
            print(name + (f"  (alias: {extra})" if extra else ""))
        return EXIT_PASS
    try:
        name = scenarios.canonical_name(opts.name)
    except KeyError:
        print(f"error: unknown scenario {opts.name!r}", file=sys.stderr)
        return EXIT_INPUT
    if name not in bundled_sessions():
        print(f"error: no bundled session for {name!r}", file=sys.stderr)
        return EXIT_INPUT
    return execute(bundled_text(name), None, opts)


def _parser():
    p = argparse.ArgumentParser(prog="parafrac",
                                description="Limit closures, I/J functions and related invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="stabilization cap")
        sp.add_argument("--threads", type=int, default=1, help="worker processes for tables")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--seed", type=int, default=0, help="seed for the p-standard search")
        sp.add_argument("--timings", action="store_true", help="record wall-clock seconds")

    run = sub.add_parser("run", help="run the tasks of a session file")
    run.add_argument("file", help="session file, or - for stdin")
    run.add_argument("task", nargs="?", help="run only this task")
    common(run)
    run.set_defaults(func=_cmd_run)

    ver = sub.add_parser("verify", help="run a bundled verification scenario")
    ver.add_argument("name", nargs="?")
    ver.add_argument("--list", action="store_true", help="list bundled scenarios")
    common(ver)
    ver.set_defaults(func=_cmd_verify)
    return p


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    opts = _parser().parse_args(argv)
    warnings.showwarning = _show_warning
    if opts.cap < 1 or opts.threads < 1:
        print("error: --cap and --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    return opts.func(opts)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``pk <subcommand>``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
Machine-readable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import encoding as enc
from . import kernel as K
from .classes import classify
from .primrec import FuelExhausted
from .proofs import Eval, Proof
from .syntax import Formula, ParseError, Var, parse, to_sexp

OK, FAIL, USAGE = 0, 1, 2
DEFAULT_FUEL = 10**7
DEFAULT_STORE = "certstore"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _err(*parts):
    print(*parts, file=sys.stderr)


def _read_text(arg: str) -> str:
    p = Path(arg)
    if p.exists():
        return p.read_text()
    return arg


def _read_formula(arg: str) -> Formula:
    phi = parse(_read_text(arg).strip())
    if not isinstance(phi, Formula):
        raise UsageError("expected a formula")
    return phi


def _read_proof(path: str) -> Proof:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return K.load_proof(text)


# -- store -----------------------------------------------------------------------------

@dataclass(frozen=True)
class StoreRecord:
    timestamp: str
    d: str
    kind: str
    verdict: str
    path: str
    version: str

    def line(self) -> str:
        return "\t".join((self.timestamp, self.d, self.kind, self.verdict, self.path, self.version))

    @staticmethod
    def parse(line: str) -> "StoreRecord":
        return StoreRecord(*line.rstrip("\n").split("\t"))


class Store:
    """Append-only certificate store: certs/ plus one TSV record per event."""

    def __init__(self, root):
        self.root = Path(root)
        self.certs = self.root / "certs"
        self.index = self.root / "records.tsv"

    def put(self, cert, verdict: str) -> StoreRecord:
        self.certs.mkdir(parents=True, exist_ok=True)
        text = cert.dumps()
        digest = hashlib.sha256(text.encode()).hexdigest()[:16]
        path = self.certs / f"{cert.kind}-{digest}.json"
        if not path.exists():
            path.write_text(text)
        return self.append(str(cert.d), cert.kind, verdict, str(path))

    def append(self, d: str, kind: str, verdict: str, path: str) -> StoreRecord:
        self.root.mkdir(parents=True, exist_ok=True)
        rec = StoreRecord(time.strftime("%Y-%m-%dT%H:%M:%S"), d, kind, verdict, path, __version__)
        with open(self.index, "a") as fh:
            fh.write(rec.line() + "\n")
        return rec

    def records(self) -> list[StoreRecord]:
        if not self.index.exists():
            return []
        return [StoreRecord.parse(l) for l in self.index.read_text().splitlines() if l.strip()]


# -- subcommands -----------------------------------------------------------------------------

def cmd_parse(a) -> int:
    print(to_sexp(parse(_read_text(a.text).strip())))
    return OK


def cmd_print(a) -> int:
    p = _read_proof(a.file)
    for i, line in enumerate(p.lines):
        j = line.just
        print(f"{i:4d}  {to_sexp(line.formula)}    [{type(j).__name__.lower()}]")
    return OK


def cmd_encode(a) -> int:
    obj = _read_proof(a.text) if a.proof else parse(_read_text(a.text).strip())
    print(enc.encode(obj))
    return OK


def cmd_decode(a) -> int:
    try:
        obj = enc.decode(int(a.code))
    except ValueError as exc:
        _err(f"decode failed: {exc}")
        return FAIL
    print(K.dump_proof(obj) if isinstance(obj, Proof) else to_sexp(obj))
    return OK


def cmd_classify(a) -> int:
    print(repr(classify(_read_formula(a.text))))
    return OK


def cmd_check(a) -> int:
    p = _read_proof(a.file)
    res = K.check_proof(p, a.fuel)
    if res.accepted:
        print(to_sexp(res.theorem.formula))
        return OK
    for k, why in res.errors:
        _err(f"line {k}: {why}")
    return FAIL


def cmd_tarski(a) -> int:
    from .truthdef import tarski_proof

    d = tarski_proof(_read_formula(a.formula), a.level)
    ok = d.check()
    if a.out:
        Path(a.out).write_text(K.dump_proof(d.proof))
    print(json.dumps({"goal": to_sexp(d.goal), "lines": len(d.proof.lines), "accepted": ok}))
    return OK if ok else FAIL


def cmd_trn(a) -> int:
    from .truthdef import build_tr

    print(to_sexp(build_tr(a.n).formula))
    return OK


def _certify(target, mode: str, fuel: int, unfold: bool = False):
    from .selector import evaluation_certify, invariant_certify

    if mode == "invariant":
        p = target if isinstance(target, Proof) else enc.decode(target)
        return invariant_certify(p, fuel)
    d = target if isinstance(target, int) else enc.encode(target)
    return evaluation_certify(d, fuel, unfold)


def cmd_certify(a) -> int:
    from .selector import CertificationError, verify_certificate

    if (a.file is None) == (a.code is None):
        raise UsageError("give a proof file or --code")
    target = _read_proof(a.file) if a.file else int(a.code)
    try:
        cert = _certify(target, a.mode, a.fuel, a.unfold)
    except (CertificationError, FuelExhausted, ValueError) as exc:
        _err(f"certification failed: {exc}")
        return FAIL
    v = verify_certificate(cert)
    rec = Store(a.store).put(cert, "pass" if v.ok else "fail")
    print(json.dumps({"kind": cert.kind, "d": str(cert.d), "verdict": rec.verdict, "path": rec.path}))
    return OK if v.ok else FAIL


def _verify_file(path: str):
    from .selector import Certificate, verify_certificate

    cert = Certificate.loads(Path(path).read_text())
    return cert, verify_certificate(cert)


def cmd_verify(a) -> int:
    try:
        cert, v = _verify_file(a.file)
    except (OSError, ValueError, KeyError) as exc:
        _err(f"cannot read certificate: {exc}")
        return FAIL
    for name, ok, detail in v.components:
        print(f"{'pass' if ok else 'FAIL'}\t{name}\t{detail}")
    return OK if v.ok else FAIL


def _sample(text: str | None):
    from .schemes import DEFAULT_SAMPLE

    if not text:
        return list(DEFAULT_SAMPLE)
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    return out


def cmd_scheme(a) -> int:
    from . import schemes as S

    if a.action == "demo-ci":
        psi = _read_formula(a.psi) if a.psi else parse("(= x0 x0)")
        d = S.ci_selector(psi)
        ok = d.check()
        print(json.dumps({"psi": to_sexp(psi), "goal": to_sexp(d.goal), "lines": len(d.proof.lines),
                          "accepted": ok}))
        return OK if ok else FAIL
    if a.kind == "consistency":
        sp, sch = S.consistency_selector(), S.consistency_scheme()
        ns = _sample(a.sample)
    elif a.kind == "ci":
        sp, sch = S.ci_scheme_proof(), S.ci_scheme()
        ns = [enc.encode(_read_formula(x)) for x in (a.psi or "(= x0 x0)").split(";")]
    elif a.kind == "strong":
        if not a.proof:
            raise UsageError("--proof is required for strong schemes")
        sp = S.strong_to_provable(_read_proof(a.proof))
        sch = S.scheme_of(sp)
        ns = _sample(a.sample)
    else:
        raise UsageError(f"unknown scheme kind {a.kind}")
    bad = 0
    for n in ns:
        v = S.check_scheme_instance(sp, sch, n, a.fuel)
        bad += not v.ok
        print(f"{n}\t{'pass' if v.ok else 'fail'}\t{v.reason}")
    return OK if bad == 0 else FAIL


def corpus_run(directory, mode: str, fuel: int = DEFAULT_FUEL, store: Store | None = None) -> dict:
    from .selector import verify_certificate

    files = sorted(Path(directory).glob("*.json"))
    rows, levels = [], {}
    for f in files:
        t0 = time.time()
        row = {"file": f.name}
        try:
            p = K.load_proof(f.read_text())
            cert = _certify(p, mode, fuel)
            v = verify_certificate(cert)
            row.update(verdict="pass" if v.ok else "fail", level=cert.level,
                       lines=len(p.lines))
            if cert.level is not None:
                levels[str(cert.level)] = levels.get(str(cert.level), 0) + 1
            if store is not None:
                store.put(cert, row["verdict"])
        except Exception as exc:  # one bad file must not stop the run
            row.update(verdict="fail", error=f"{type(exc).__name__}: {exc}")
        row["seconds"] = round(time.time() - t0, 3)
        rows.append(row)
    passed = sum(r["verdict"] == "pass" for r in rows)
    return {"mode": mode, "files": rows, "pass": passed, "fail": len(rows) - passed,
            "levels": levels}


def cmd_corpus(a) -> int:
    summary = corpus_run(a.dir, a.mode, a.fuel, Store(a.store))
    print(json.dumps(summary, indent=1))
    return OK if summary["fail"] == 0 else FAIL


def eval_lines(cert):
    """Eval-justified lines in every embedded proof of a certificate."""
    proofs = [cert.final.proof]
    for l in cert.line_lemmas:
        proofs += [l.tarski.proof, l.closure.proof]
    if cert.bot_exclusion is not None:
        proofs.append(cert.bot_exclusion.proof)
    seen, out = set(), []
    for p in proofs:
        for line in p.lines:
            if isinstance(line.just, Eval) and line.formula not in seen:
                seen.add(line.formula)
                out.append(line.formula)
    return out


def unfold_audit(cert, limit: int = 64) -> list[tuple[str, bool, str]]:
    """Replay small Eval equations without Eval; (equation, ok, note) per equation."""
    from .builder.nd import derivation
    from .builder.unfold import unfold_fact

    out = []
    for eq in eval_lines(cert):
        if len(enc.serialize(eq.left)) > limit:
            continue
        try:
            d = derivation(unfold_fact(eq.left))
            evals = any(isinstance(l.just, Eval) for l in d.proof.lines)
            ok = d.check() and d.goal is eq and not evals
            out.append((to_sexp(eq), ok, f"{len(d.proof.lines)} lines"))
        except Exception as exc:
            out.append((to_sexp(eq), False, str(exc)))
    return out


def cmd_audit(a) -> int:
    store = Store(a.store)
    bad = 0
    for rec in store.records():
        if rec.path in ("", "-"):
            continue
        try:
            cert, v = _verify_file(rec.path)
            ok = v.ok
        except Exception as exc:
            _err(f"{rec.path}: {exc}")
            cert, ok = None, False
        if ok and a.unfold and cert is not None:
            for eq, uok, note in unfold_audit(cert):
                print(f"unfold\t{'pass' if uok else 'FAIL'}\t{eq}\t{note}")
                ok = ok and uok
        store.append(rec.d, rec.kind, "pass" if ok else "fail", rec.path)
        print(f"{rec.d[:24]}\t{rec.kind}\t{'pass' if ok else 'FAIL'}")
        bad += not ok
    return OK if bad == 0 else FAIL


# -- entry point ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pk", description="Peano arithmetic proof kernel and certificate tool")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.add_argument("--store", default=DEFAULT_STORE)
    p.add_argument("--unfold", action="store_true")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    s = sub.add_parser("parse"); s.add_argument("text"); s.set_defaults(fn=cmd_parse)
    s = sub.add_parser("print"); s.add_argument("file"); s.set_defaults(fn=cmd_print)
    s = sub.add_parser("encode"); s.add_argument("text")
    s.add_argument("--proof", action="store_true", help="treat the argument as a proof file")
    s.set_defaults(fn=cmd_encode)
    s = sub.add_parser("decode"); s.add_argument("code"); s.set_defaults(fn=cmd_decode)
    s = sub.add_parser("classify"); s.add_argument("text"); s.set_defaults(fn=cmd_classify)
    s = sub.add_parser("check"); s.add_argument("file"); s.set_defaults(fn=cmd_check)
    s = sub.add_parser("tarski"); s.add_argument("formula")
    s.add_argument("--level", type=int, default=1); s.add_argument("--out")
    s.set_defaults(fn=cmd_tarski)
    s = sub.add_parser("trn"); s.add_argument("n", type=int); s.set_defaults(fn=cmd_trn)
    s = sub.add_parser("certify"); s.add_argument("file", nargs="?")
    s.add_argument("--mode", choices=["invariant", "evaluation"], default="invariant")
    s.add_argument("--code")
    s.set_defaults(fn=cmd_certify)
    s = sub.add_parser("verify"); s.add_argument("file"); s.set_defaults(fn=cmd_verify)
    s = sub.add_parser("scheme"); s.add_argument("action", choices=["check", "demo-ci"])
    s.add_argument("--kind", choices=["consistency", "ci", "strong"], default="consistency")
    s.add_argument("--sample"); s.add_argument("--proof"); s.add_argument("--psi")
    s.set_defaults(fn=cmd_scheme)
    s = sub.add_parser("corpus"); s.add_argument("action", choices=["run"]); s.add_argument("dir")
    s.add_argument("--mode", choices=["invariant", "evaluation"], default="invariant")
    s.set_defaults(fn=cmd_corpus)
    s = sub.add_parser("audit"); s.set_defaults(fn=cmd_audit)
    return p


def _hoist_globals(argv):
    """Allow the global flags after the subcommand too."""
    flags = {"--fuel": 1, "--store": 1, "--unfold": 0, "--sample": 1}
    front, rest = [], []
    i = 0
    while i < len(argv):
        arg = argv[i]
        name = arg.split("=", 1)[0]
        if name in flags and name != "--sample":
            n = 0 if "=" in arg else flags[name]
            front.extend(argv[i:i + 1 + n])
            i += 1 + n
        else:
            rest.append(arg)
            i += 1
    return front + rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_hoist_globals(argv))
        if not getattr(args, "cmd", None):
            raise UsageError("missing subcommand")
        return args.fn(args)
    except UsageError as exc:
        _err(f"usage: {exc}")
        return USAGE
    except (ParseError, K.KernelError, json.JSONDecodeError) as exc:
        _err(f"input error: {exc}")
        return USAGE
    except FuelExhausted as exc:
        _err(f"fuel exhausted: {exc}")
        return FAIL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    ltcrit <command> JOB.toml [--out CERT.json]
    ltcrit batch JOBS.toml [--out-dir DIR] [--jobs N]
    ltcrit replay CERT.json

Exit codes: 0 criterion satisfied / true, 1 Inconclusive / false,
2 input error, 3 capability error (degree or precision cap).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import tomli

from ltcrit import __version__, certificates
from ltcrit.errors import CapabilityError, InputError
from ltcrit.jobs import (
    COMMANDS,
    EXIT_CAPABILITY,
    EXIT_INPUT,
    EXIT_NEGATIVE,
    EXIT_OK,
    Settings,
    inputs_hash,
    run_job,
)


class ParseError(InputError):
    pass


def _read_toml(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as ex:
        raise ParseError(f"{path}: {ex.strerror}") from ex
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as ex:
        raise ParseError(f"{path}: {ex}") from ex


def _assert_galois(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    try:
        d_G, e_G = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected d_G,e_G") from None
    return d_G, e_G


def _settings(args) -> Settings:
    return Settings(args.precision, args.max_precision, args.galois_cap, args.assert_galois, args.format)


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--precision", type=int, default=Settings.precision, help="initial p-adic digits")
    sp.add_argument("--max-precision", type=int, default=Settings.max_precision, help="escalation ceiling")
    sp.add_argument("--galois-cap", type=int, default=Settings.galois_cap, help="largest closure degree to compute")
    sp.add_argument("--assert-galois", type=_assert_galois, default=None, metavar="d_G,e_G",
                    help="use these closure invariants instead of computing them (flagged in certificates)")
    sp.add_argument("--format", choices=("full", "brief"), default="full",
                    help="brief omits Weil transcripts from certificates")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ltcrit", description="Torsion-finiteness criteria over Lubin-Tate extensions.")
    ap.add_argument("--version", action="version", version=f"ltcrit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, help=f"run a {name} job file")
        sp.add_argument("job", help="TOML job file")
        sp.add_argument("--out", help="write the certificate here instead of stdout")
        _add_common(sp)
    sp = sub.add_parser("batch", help="run a file of [[jobs]] tables")
    sp.add_argument("jobs", help="TOML file with [[jobs]] tables")
    sp.add_argument("--out-dir", help="write one certificate per job and summary.tsv here")
    sp.add_argument("--jobs", dest="workers", type=int, default=1, help="parallel worker processes")
    _add_common(sp)
    sp = sub.add_parser("replay", help="re-check a certificate document")
    sp.add_argument("certificate")
    return ap


def _single(args) -> int:
    settings = _settings(args)
    job = _read_toml(args.job)
    declared = job.get("command", args.command)
    if declared != args.command:
        raise ParseError(f"{args.job}: job declares command {declared!r}, invoked as {args.command!r}")
    job = dict(job, command=args.command)
    outcome, err = run_job(job, settings)
    if err is not None:
        print(f"ltcrit: {err}", file=sys.stderr)
        return outcome.status
    text = certificates.dumps(certificates.build(job, settings, outcome))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{args.command}: {outcome.summary}")
    else:
        sys.stdout.write(text)
    return outcome.status


def _batch_row(payload):
    job, settings = payload
    outcome, err = run_job(job, settings)
    return outcome, err


def _batch(args) -> int:
    settings = _settings(args)
    doc = _read_toml(args.jobs)
    jobs = doc.get("jobs", [])
    if not isinstance(jobs, list) or any(not isinstance(j, dict) for j in jobs):
        raise ParseError(f"{args.jobs}: 'jobs' must be an array of tables ([[jobs]])")
    payloads = [(j, settings) for j in jobs]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as ex:
            rows = list(ex.map(_batch_row, payloads))
    else:
        rows = [_batch_row(pl) for pl in payloads]
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["index\tname\tcommand\tinputs_hash\tstatus\tresult\twitnesses"]
    worst = EXIT_OK
    for idx, (job, (outcome, err)) in enumerate(zip(jobs, rows), start=1):
        name = str(job.get("name", f"job-{idx:03d}"))
        result = outcome.summary if err is None else f"{outcome.summary}: {err}"
        lines.append("\t".join([
            str(idx), name, str(job.get("command", "?")), inputs_hash(job, settings),
            str(outcome.status), result, ",".join(outcome.witnesses) or "-",
        ]))
        worst = max(worst, outcome.status)
        if out_dir:
            cert = certificates.build(job, settings, outcome)
            (out_dir / f"job-{idx:03d}.json").write_text(certificates.dumps(cert), encoding="utf-8")
    table = "\n".join(lines) + "\n"
    sys.stdout.write(table)
    if out_dir:
        (out_dir / "summary.tsv").write_text(table, encoding="utf-8")
    return worst


def _replay(args) -> int:
    try:
        doc = certificates.loads(Path(args.certificate).read_text(encoding="utf-8"))
    except (OSError, ValueError) as ex:
        raise ParseError(f"{args.certificate}: {ex}") from ex
    ok = certificates.replay(doc)
    print(f"replay: {'consistent' if ok else 'INCONSISTENT'} (recorded status {doc['status']})")
    return doc["status"] if ok else EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "batch":
            return _batch(args)
        if args.command == "replay":
            return _replay(args)
        return _single(args)
    except InputError as ex:
        print(f"ltcrit: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityError as ex:
        print(f"ltcrit: {ex}", file=sys.stderr)
        return EXIT_CAPABILITY


def entry() -> None:
    sys.exit(main())


__all__ = ["EXIT_NEGATIVE", "build_parser", "entry", "main"]

"""Command-line front end.

    wpaudit pmkid PASSPHRASE --essid NAME --ap MAC --sta MAC
    wpaudit crack CAPTURE -k phone:9 -k date:1900-2019 [--workers N]
    wpaudit strength PASSPHRASE... | --file FILE
    wpaudit classify RECOVERED_FILE
    wpaudit benchmark [--duration S]

Exit status: 0 success, 1 nothing cracked under --strict, 2 usage or
validation error.
"""

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import crypto, engine, formats
from .classify import ClassifyContext, classify, distribution, geo_correlate, mask
from .keyspace import (
    KeyspaceError,
    default_entries,
    default_prefix_table,
    load_prefix_table,
    load_vendor_defaults,
    parse_keyspace_spec,
)
from .strength import LayoutError, UnmappableCharacter, layout_from_path, qwerty_layout, strength_report

log = logging.getLogger("wpaudit")

UNMASK_ENV = "WPAUDIT_ALLOW_UNMASKED"

EXIT_OK = 0
EXIT_NO_RESULT = 1
EXIT_USAGE = 2

_PATH_KEYS = ("oui", "prefix_table", "defaults", "layout", "dictionary")


class UsageError(Exception):
    pass


def _common(parser):
    g = parser.add_argument_group("common options")
    g.add_argument("--config", help="JSON file with option defaults (same keys as the flags)")
    g.add_argument("--oui", help="OUI table, XX-XX-XX<TAB>Manufacturer per line")
    g.add_argument("--prefix-table", help="phone prefix table, prefix<TAB>region per line")
    g.add_argument("--defaults", help="extra vendor defaults, manufacturer<TAB>model<TAB>psk<TAB>wps-pin")
    g.add_argument("--layout", help="keyboard layout file (default: built-in QWERTY)")
    g.add_argument("--dictionary", action="append", help="word list used for classification (repeatable)")
    g.add_argument("--workers", type=int, help="worker threads (default: CPU count)")
    g.add_argument("--format", choices=("table", "json"), help="output format (default: table)")
    g.add_argument("--unmasked", action="store_true", default=None,
                   help=f"print passphrases in clear; also requires {UNMASK_ENV}=1")
    g.add_argument("-o", "--output", help="write the report to this path instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="wpaudit", description="WPA2-PSK passphrase audit toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmkid", help="compute a PMKID capture line for a known passphrase")
    p.add_argument("passphrase")
    p.add_argument("--essid", required=True)
    p.add_argument("--ap", required=True, help="access point MAC")
    p.add_argument("--sta", required=True, help="station MAC")
    p.add_argument("--legacy", action="store_true", help="emit the 4-field legacy line form")
    _common(p)

    p = sub.add_parser("crack", help="crack PMKID / EAPOL capture lines over keyspaces")
    p.add_argument("capture")
    p.add_argument("-k", "--keyspace", action="append", required=True,
                   help="keyspace spec, processed in the order given (repeatable)")
    p.add_argument("--stop-policy", choices=[s.value for s in engine.StopPolicy], default="first-match")
    p.add_argument("--start-index", type=int, default=0, help="resume the first keyspace at this index")
    p.add_argument("--chunk-size", type=int, default=engine.DEFAULT_CHUNK)
    p.add_argument("--strict", action="store_true", help="exit 1 when nothing was cracked")
    p.add_argument("--progress", action="store_true", help="report progress on stderr")
    _common(p)

    p = sub.add_parser("strength", help="entropy and keyboard-trace strength report")
    p.add_argument("passphrases", nargs="*")
    p.add_argument("--file", help="read passphrases from a file, one per line")
    _common(p)

    p = sub.add_parser("classify", help="classify recovered passphrases")
    p.add_argument("recovered")
    _common(p)

    p = sub.add_parser("benchmark", help="measure PMKID verification throughput")
    p.add_argument("--duration", type=float, default=4.0)
    _common(p)
    return parser


def _resolve(args):
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        for key, value in config.items():
            key = key.replace("-", "_")
            if getattr(args, key, None) is None:
                setattr(args, key, value)
    args.workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    args.format = args.format or "table"
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    if isinstance(args.dictionary, str):
        args.dictionary = [args.dictionary]
    for key in _PATH_KEYS:
        value = getattr(args, key, None)
        for path in value if isinstance(value, list) else [value]:
            if path is not None and not os.path.exists(path):
                raise UsageError(f"--{key.replace('_', '-')}: no such file {path}")
    if args.unmasked and os.environ.get(UNMASK_ENV) != "1":
        raise UsageError(f"--unmasked also needs the environment variable {UNMASK_ENV}=1")
    args.unmasked = bool(args.unmasked)


def _show(passphrase, unmasked):
    if passphrase is None or unmasked:
        return passphrase
    return mask(passphrase) if len(passphrase) >= 8 else "x" * len(passphrase)


@contextmanager
def _out(args):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            yield fh
    else:
        yield sys.stdout


def _load_oui(args):
    if not args.oui:
        return formats.OuiTable()
    with open(args.oui, encoding="utf-8") as fh:
        return formats.load_oui(fh)


def _prefix_table(args):
    if not args.prefix_table:
        return default_prefix_table()
    with open(args.prefix_table, encoding="utf-8") as fh:
        return load_prefix_table(fh)


def cmd_pmkid(args):
    try:
        pmk = crypto.derive_pmk(args.passphrase, args.essid.encode("utf-8"))
        target = formats.HashTarget(
            crypto.compute_pmkid(pmk, args.ap, args.sta),
            crypto.parse_mac(args.ap),
            crypto.parse_mac(args.sta),
            args.essid.encode("utf-8"),
        )
    except (crypto.CryptoError, formats.FormatError) as exc:
        raise UsageError(str(exc)) from None
    with _out(args) as out:
        out.write(target.to_line("legacy" if args.legacy else "modern") + "\n")
    return EXIT_OK


def cmd_crack(args):
    try:
        with open(args.capture, "rb") as fh:
            targets, errors = formats.load_capture(fh)
    except OSError as exc:
        raise UsageError(f"cannot read capture file: {exc}") from None
    for err in errors:
        log.warning("skipping capture %s", err)
    if not targets:
        raise UsageError("no usable targets in capture file")

    keyspaces = []
    for i, spec in enumerate(args.keyspace):
        try:
            ks = parse_keyspace_spec(spec, args.defaults)
            if i == 0 and args.start_index:
                ks = ks.window(args.start_index)
        except (KeyspaceError, OSError) as exc:
            raise UsageError(f"keyspace {spec!r}: {exc}") from None
        log.info("keyspace %s (%s): %d candidates", spec, ks.kind.value, ks.cardinality())
        keyspaces.append(ks)

    def progress(tried, kind, flags):
        print(f"[progress] {tried} candidates tried, keyspace {kind}, "
              f"{sum(flags)}/{len(flags)} cracked", file=sys.stderr)

    job = engine.CrackJob(targets, keyspaces, args.workers, args.stop_policy, args.chunk_size)
    results = engine.run(job, progress if args.progress else None)
    oui = _load_oui(args)
    vendors = formats.vendor_report(targets, oui)

    rows = []
    for res in results:
        t = targets[res.target_id]
        rows.append({
            "line": t.source_line,
            "type": "pmkid" if isinstance(t, formats.HashTarget) else "eapol",
            "essid": t.essid.decode("utf-8", errors="replace"),
            "mac_ap": crypto.format_mac(t.mac_ap),
            "vendor": oui.lookup(t.mac_ap),
            "status": "error" if res.error else ("cracked" if res.found else "not found"),
            "passphrase": _show(res.passphrase, args.unmasked),
            "kind": res.keyspace_kind,
            "keyspace": res.keyspace,
            "index": res.candidate_index,
            "tried": res.candidates_tried,
            "elapsed_s": round(res.elapsed, 3),
            "rate": round(res.throughput, 1),
            "error": res.error,
        })

    with _out(args) as out:
        if args.format == "json":
            formats.write_json({
                "keyspaces": [{"spec": s, "kind": k.kind.value, "cardinality": k.cardinality()}
                              for s, k in zip(args.keyspace, keyspaces)],
                "results": rows,
                "vendors": dict(vendors),
                "parse_errors": [str(e) for e in errors],
            }, out)
        else:
            cols = ["line", "type", "essid", "mac_ap", "vendor", "status", "passphrase",
                    "keyspace", "index", "tried", "elapsed_s", "rate"]
            formats.write_table(rows, cols, out)
            out.write("\n")
            formats.write_table([{"vendor": v, "count": n} for v, n in vendors.most_common()],
                                ["vendor", "count"], out)

    if args.strict and not any(r.found for r in results):
        return EXIT_NO_RESULT
    return EXIT_OK


def _read_lines(path):
    with open(path, encoding="utf-8", errors="surrogateescape") as fh:
        return [line.rstrip("\r\n") for line in fh]


def cmd_strength(args):
    words = list(args.passphrases)
    if args.file:
        words.extend(w for w in _read_lines(args.file) if w)
    if not words:
        raise UsageError("give passphrases as arguments or with --file")
    try:
        layout = layout_from_path(args.layout) if args.layout else qwerty_layout()
    except LayoutError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for word in words:
        row = {"passphrase": _show(word, args.unmasked)}
        try:
            rep = strength_report(word, layout)
        except (UnmappableCharacter, ValueError) as exc:
            row["error"] = str(exc)
        else:
            row.update(length=rep.length, alpha=rep.alpha, entropy_bits=round(rep.entropy_bits, 2),
                       score=round(rep.score, 3), path=round(rep.trace.path_length, 3),
                       layer_transitions=rep.trace.layer_transitions, band=rep.band)
        rows.append(row)
    with _out(args) as out:
        if args.format == "json":
            formats.write_json({"results": rows}, out)
        else:
            formats.write_table(rows, ["passphrase", "length", "alpha", "entropy_bits", "score",
                                       "path", "layer_transitions", "band", "error"], out)
    return EXIT_OK


def _classify_context(args):
    defaults = default_entries()
    if args.defaults:
        with open(args.defaults, encoding="utf-8") as fh:
            defaults = default_entries(load_vendor_defaults(fh))
    words = set()
    for path in args.dictionary or []:
        words.update(w.strip() for w in _read_lines(path) if w.strip())
    return ClassifyContext(default_dict=defaults, dictionary_words=words,
                           phone_prefix_table=_prefix_table(args))


def cmd_classify(args):
    try:
        lines = _read_lines(args.recovered)
    except OSError as exc:
        raise UsageError(f"cannot read {args.recovered}: {exc}") from None
    ctx = _classify_context(args)
    classified = []
    for lineno, line in enumerate(lines, 1):
        if not line:
            continue
        if len(line) < 8:
            log.warning("line %d: shorter than 8 characters, skipped", lineno)
            continue
        classified.append(classify(line, ctx))
    dist = distribution(classified)
    regions = geo_correlate(classified, ctx.phone_prefix_table)
    rows = [{"passphrase": c.passphrase if args.unmasked else c.masked,
             "label": c.label.value, "evidence": c.evidence} for c in classified]
    with _out(args) as out:
        if args.format == "json":
            formats.write_json({"results": rows, "distribution": dist.rows(),
                                "total": dist.total, "regions": dict(regions)}, out)
        else:
            formats.write_table(rows, ["passphrase", "label", "evidence"], out)
            out.write("\n")
            formats.write_table(dist.rows(), ["label", "count", "percent"], out)
            out.write("\n")
            formats.write_table([{"region": r, "count": n} for r, n in regions.most_common()],
                                ["region", "count"], out)
    return EXIT_OK


# reference points: (label, keyspace size, reported wall time in seconds)
_REPORTED = (
    ("8-digit keyspace", 10 ** 8, "within 10 minutes", 600.0),
    ("8-digit, first digit known", 10 ** 7, "about 60 seconds", 60.0),
    ("area prefix, 5 unknown digits", 10 ** 5, "1-5 seconds", 5.0),
    ("area prefix, 4 unknown digits", 10 ** 4, "1-5 seconds", 5.0),
)


def cmd_benchmark(args):
    if args.duration < 1:
        raise UsageError("--duration must be at least 1 second")
    rep = engine.benchmark(args.duration, args.workers)
    rows = []
    for label, size, claim, limit in _REPORTED:
        secs = rep.projected_seconds(size)
        rows.append({"keyspace": label, "candidates": size, "projected_s": round(secs, 2),
                     "reported": claim, "within_reported": secs <= limit})
    with _out(args) as out:
        if args.format == "json":
            formats.write_json({"single_core_rate": rep.single_rate, "all_core_rate": rep.multi_rate,
                                "workers": rep.workers, "projections": rows}, out)
        else:
            out.write(f"single core: {rep.single_rate:.1f} candidates/s\n")
            out.write(f"{rep.workers} workers: {rep.multi_rate:.1f} candidates/s\n\n")
            formats.write_table(rows, ["keyspace", "candidates", "projected_s", "reported",
                                       "within_reported"], out)
    return EXIT_OK


COMMANDS = {
    "pmkid": cmd_pmkid,
    "crack": cmd_crack,
    "strength": cmd_strength,
    "classify": cmd_classify,
    "benchmark": cmd_benchmark,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        _resolve(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"wpaudit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

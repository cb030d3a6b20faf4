"""Command-line surface for batch use: `sln <command> ...`.

Exit codes are stable: 0 success (and "document valid"), 1 document
invalid, 2 I/O or parse failure, 3 usage error.  Results go to stdout,
diagnostics to stderr.  No environment variables, no network, no daemon
mode; every path handled is named on the command line.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import media, ops, schema, search, xmlio
from .model import InvalidEntry, new_notebook

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sln", description="Solar Lab Notebook file toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a file against the notebook schema")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--lenient", action="store_true",
                   help="downgrade unknown-content findings to warnings")

    p = sub.add_parser("new", help="write an empty notebook")
    p.add_argument("file")

    p = sub.add_parser("stats", help="one-pass document statistics")
    p.add_argument("file")

    p = sub.add_parser("query", help="search website entries")
    p.add_argument("file")
    p.add_argument("text")

    p = sub.add_parser("merge", help="merge two notebooks")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--prefer", choices=("first", "second", "both"), default="both")

    p = sub.add_parser("extract", help="write embedded media or datasets to files")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--images", action="store_true")
    group.add_argument("--datasets", action="store_true")
    p.add_argument("-o", "--output", required=True, help="output directory")

    p = sub.add_parser("thumb", help="downscale a PNG (fixed ratio or auto thumbnail)")
    p.add_argument("image")
    p.add_argument("--scale", choices=("1:2", "1:4", "1:8"),
                   help="fixed reduction; omit for a <=128px thumbnail")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("diff", help="key-based change list between two notebooks")
    p.add_argument("a")
    p.add_argument("b")
    return parser


def _read_notebook(path: str):
    with open(path, "rb") as handle:
        return xmlio.parse_notebook(handle)


def _cmd_validate(args) -> int:
    with open(args.file, "rb") as handle:
        report = schema.validate(handle, lenient=args.lenient)
    if args.format == "json":
        print(report.to_json())
    else:
        if report.findings:
            print(report.to_text())
        print("valid" if report.valid else f"invalid: {_error_count(report)} error(s)")
    return EXIT_OK if report.valid else EXIT_INVALID


def _error_count(report) -> int:
    return sum(1 for f in report.findings if f.severity is schema.Severity.ERROR)


def _cmd_new(args) -> int:
    path = Path(args.file)
    if path.exists():
        print(f"sln: refusing to overwrite {path}", file=sys.stderr)
        return EXIT_IO
    with open(path, "wb") as sink:
        xmlio.serialize_notebook(new_notebook(), sink)
    return EXIT_OK


def _cmd_stats(args) -> int:
    with open(args.file, "rb") as handle:
        stats = xmlio.stream_stats(handle)
    for key in ("website_count", "dataset_bytes", "image_count", "total_media_bytes"):
        print(f"{key}={getattr(stats, key)}")
    return EXIT_OK


def _cmd_query(args) -> int:
    nb = _read_notebook(args.file)
    index = search.build_index(nb)
    for hit in search.query(index, args.text).hits:
        site = nb.websites[hit.entry]
        print(f"{hit.entry}\t{hit.field}\t{site.name}")
    return EXIT_OK


def _cmd_merge(args) -> int:
    policy = ops.MergePolicy(args.prefer)
    merged = ops.merge(_read_notebook(args.a), _read_notebook(args.b), policy)
    with open(args.output, "wb") as sink:
        xmlio.serialize_notebook(merged, sink)
    return EXIT_OK


def _cmd_extract(args) -> int:
    nb = _read_notebook(args.file)
    if args.images:
        manifest = ops.extract_media(nb, args.output)
    else:
        manifest = ops.extract_datasets(nb, args.output)
    print(ops.manifest_json(manifest))
    return EXIT_OK


def _cmd_thumb(args) -> int:
    data = Path(args.image).read_bytes()
    raster = media.decode_raster(data)
    if args.scale:
        result = media.scale(raster, media.ScaleFactor.from_ratio(args.scale))
    else:
        result = media.make_thumbnail(raster)
    Path(args.output).write_bytes(media.encode_raster(result))
    return EXIT_OK


def _cmd_diff(args) -> int:
    changes = ops.diff(_read_notebook(args.a), _read_notebook(args.b))
    for change in changes:
        if isinstance(change, ops.Added):
            print(f"added {_key_str(change.key)}")
        elif isinstance(change, ops.Removed):
            print(f"removed {_key_str(change.key)}")
        elif isinstance(change, ops.Modified):
            fields = ", ".join(fc.field for fc in change.changes)
            print(f"modified {_key_str(change.key)}: {fields}")
        elif isinstance(change, ops.Reordered):
            print("reordered entries")
        elif isinstance(change, ops.FieldChange):
            print(f"changed {change.field}: {change.old!r} -> {change.new!r}")
    return EXIT_OK


def _key_str(key) -> str:
    text = f'website "{key.name}" @ {key.location}'
    if key.ordinal > 1:
        text += f" #{key.ordinal}"
    return text


_COMMANDS = {
    "validate": _cmd_validate,
    "new": _cmd_new,
    "stats": _cmd_stats,
    "query": _cmd_query,
    "merge": _cmd_merge,
    "extract": _cmd_extract,
    "thumb": _cmd_thumb,
    "diff": _cmd_diff,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; normalize everything else to usage.
        return exc.code if exc.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (OSError, xmlio.SlnParseError, InvalidEntry, media.UnsupportedFormat,
            media.CorruptImage, media.MalformedDataUri) as exc:
        print(f"sln: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Regenerate the CLI golden fixtures in tests/goldens/.

Review the diff before committing: the goldens pin the byte-exact JSON
contract of every subcommand.
"""

import contextlib
import io
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from extatica.cli import main  # noqa: E402
from golden_cases import GOLDEN_CASES  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"{argv} exited {code}")
    return buf.getvalue()


def main_script():
    outdir = ROOT / "tests" / "goldens"
    outdir.mkdir(exist_ok=True)
    for name, argv in GOLDEN_CASES:
        text = run(argv)
        path = outdir / f"{name}.json"
        path.write_text(text)
        print(f"wrote {path.relative_to(ROOT)} ({len(text)} bytes)")


if __name__ == "__main__":
    main_script()

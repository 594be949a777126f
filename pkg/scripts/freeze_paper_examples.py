"""Regenerate the stored transcripts of the worked examples.

Refuses to write anything unless every example passes its own checks.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ncpoly.paper_examples import EXAMPLES

TARGET = Path(__file__).resolve().parents[1] / "src" / "ncpoly" / "data" / "paper_examples.json"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=TARGET)
    args = parser.parse_args()
    golden = {}
    for id, (title, fn) in EXAMPLES.items():
        res = fn()
        failed = [c.name for c in res.checks if not c.passed]
        if failed:
            print(f"{id}: failing checks {failed}; nothing written", file=sys.stderr)
            return 1
        golden[id] = res.lines
    args.out.write_text(json.dumps(golden, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(golden)} transcripts to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

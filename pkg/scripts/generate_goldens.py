"""Regenerate the CLI golden files in tests/cli/golden/.

Run from the repository root after an intentional output change:
    python scripts/generate_goldens.py
"""

from __future__ import annotations

import io
import sys
from contextlib import redirect_stdout
from pathlib import Path

_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(_ROOT))

from core.cli import main as cli_main  # noqa: E402

GOLDEN_DIR = _ROOT / "tests" / "cli" / "golden"

# file name -> argv
CASES: dict[str, list[str]] = {
    "analyze_periodic_1.json": ["analyze", "periodic:1"],
    "analyze_modified_bump.json": ["analyze", "modified:periodic:1;0=2"],
    "analyze_split_1_2.json": ["analyze", "split:1|2@0"],
    "norms_periodic_1_2.csv": ["norms", "periodic:1,2", "--n-max", "3"],
    "norms_periodic_1_c2.csv": ["norms", "periodic:1", "--c", "2", "--n-max", "4"],
    "spectrum_periodic_1_2_wrap4.csv": ["spectrum", "periodic:1,2", "--wrap", "4"],
    "spectrum_periodic_1_wrap2.csv": ["spectrum", "periodic:1", "--wrap", "2"],
    "spectrum_periodic_2_wrap1.csv": ["spectrum", "periodic:2", "--wrap", "1"],
    "spectrum_periodic_minus1_wrap1.csv": ["spectrum", "periodic:-1", "--wrap", "1"],
}


def run(argv: list[str]) -> tuple[str, int]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return buf.getvalue(), code


def main() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES.items():
        text, code = run(argv)
        (GOLDEN_DIR / name).write_text(text, encoding="utf-8")
        print(f"Wrote {name} (exit {code})")


if __name__ == "__main__":
    main()

"""Run the acceptance gate and print one PASS/FAIL line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
    lines = [ln for ln in proc.stdout.splitlines() if ln.startswith("[acceptance]")]
    for ln in lines:
        print(ln[len("[acceptance] "):])
    passed = sum(": PASS" in ln for ln in lines)
    print(f"{passed}/{len(lines)} criteria pass")
    return 0 if passed == len(lines) and lines else 1


if __name__ == "__main__":
    sys.exit(main())

import sys
from pathlib import Path

# allow running the tests from a fresh checkout without installing
src = Path(__file__).resolve().parent.parent / "src"
if str(src) not in sys.path:
    sys.path.insert(0, str(src))

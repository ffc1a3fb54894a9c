import sys
from pathlib import Path

# Allow running the tests straight from a checkout, installed or not.
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

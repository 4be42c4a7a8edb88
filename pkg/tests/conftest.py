import sys
from pathlib import Path

# make the helper modules (circgen, refeval) importable from every test file
sys.path.insert(0, str(Path(__file__).resolve().parent))

"""
FairRank entry script
Same as `python -m fairrank`; see `python run_fairrank.py --help`
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from fairrank.cli import main

if __name__ == "__main__":
    sys.exit(main())

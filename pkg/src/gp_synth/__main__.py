"""CLI 入口点"""

import sys

from gp_synth.cli import main

if __name__ == "__main__":
    sys.exit(main())

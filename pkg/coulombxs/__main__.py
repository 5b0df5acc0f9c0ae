# coulombxs/__main__.py
import sys

from coulombxs.main import run

if __name__ == "__main__":
    sys.exit(run())

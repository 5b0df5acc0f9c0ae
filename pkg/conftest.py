# conftest.py
import os
import sys

# Make the coulombxs package importable when pytest runs from the repo root
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

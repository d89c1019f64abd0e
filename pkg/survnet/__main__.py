"""Allow `python -m survnet`.

Path: survnet/__main__.py
"""
import sys

from survnet.cli import main

if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/python3
import sys

from quatlab.cli import run_main

if __name__ == '__main__':
    sys.exit(run_main())

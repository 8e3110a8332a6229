#!/usr/bin/env python3
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))  # пакеты лежат в src/
from cli.app import main

if __name__ == "__main__":
    sys.exit(main())

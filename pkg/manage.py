#!/usr/bin/env python
"""Development shortcut for the artifact-sieve commands (same as the console script)."""
from config.cli import main

if __name__ == "__main__":
    main()

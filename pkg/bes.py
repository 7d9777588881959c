import sys

from src.bes_workbench.cli import main

if __name__ == "__main__":
    sys.exit(main())

import sys

from domlab.cli import main

if __name__ == "__main__":
    sys.exit(main())

"""tporder entry point script"""

import multiprocessing
import sys

from tporder import cli


def main():
    """
    Entry point for tporder, makes a call to CLI
    """
    multiprocessing.freeze_support()
    sys.exit(cli.main())


if __name__ == "__main__":
    main()

import sys

from quantlint.pipelines.run_check import main

if __name__ == '__main__':
    sys.exit(main())

import sys

from f2squares.cli import main

sys.exit(main())

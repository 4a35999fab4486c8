import sys

from toricquot.cli import main

sys.exit(main())

import sys

from fmpartners.cli import main

sys.exit(main())

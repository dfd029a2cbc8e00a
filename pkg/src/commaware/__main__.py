import sys

from commaware.harness.cli import main

sys.exit(main())

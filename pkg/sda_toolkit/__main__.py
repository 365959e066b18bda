import sys

from sda_toolkit.cli import main

sys.exit(main())

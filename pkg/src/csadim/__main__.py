import sys

from csadim.cli import main

sys.exit(main())

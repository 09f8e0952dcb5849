import sys

from wpscoh.cli import main

sys.exit(main())

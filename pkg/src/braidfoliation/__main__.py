import sys

from braidfoliation.cli import main

sys.exit(main())

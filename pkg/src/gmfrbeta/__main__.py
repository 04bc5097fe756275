import sys

from gmfrbeta.cli import main

sys.exit(main())

import sys

from antisym.cli import main

sys.exit(main())

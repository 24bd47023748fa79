import sys

from memkern.cli import main

sys.exit(main())

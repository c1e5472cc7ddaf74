import sys

from .qtree_hopf import main

sys.exit(main())

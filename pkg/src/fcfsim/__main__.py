import sys

from fcfsim.cli import main

sys.exit(main())

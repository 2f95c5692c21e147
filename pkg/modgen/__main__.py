import sys

from modgen.main import main

sys.exit(main())

import sys
from darbouxsys.cli import main

sys.exit(main())

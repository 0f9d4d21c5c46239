import sys

from exceptional_modules.main import main

sys.exit(main())

import sys

from lsfan.main import main

sys.exit(main())

import sys

from lossyboson.cli.main import main

sys.exit(main())

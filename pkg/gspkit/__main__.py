import sys

from gspkit.main import main

sys.exit(main())

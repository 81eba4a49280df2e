import sys
from umbraq.cli import main


sys.exit(main())

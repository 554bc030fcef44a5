import sys

from adc_toolkit.cli import main

sys.exit(main())

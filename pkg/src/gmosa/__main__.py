import sys

from gmosa.harness.cli import main

sys.exit(main())

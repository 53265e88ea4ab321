from cliffspace.cli import main

raise SystemExit(main())

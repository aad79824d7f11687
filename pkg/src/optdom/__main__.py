from optdom.cli import main

raise SystemExit(main())

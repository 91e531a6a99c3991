from eqlf.cli import main

main()

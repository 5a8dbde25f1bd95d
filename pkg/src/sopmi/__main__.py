from sopmi.cli import main

main()

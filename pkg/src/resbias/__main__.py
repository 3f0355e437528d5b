from resbias.cli import main

main()

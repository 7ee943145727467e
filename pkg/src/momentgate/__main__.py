from momentgate.cli import main

main()

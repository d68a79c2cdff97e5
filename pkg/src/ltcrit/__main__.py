from ltcrit.cli import entry

entry()

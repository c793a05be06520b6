# app.py
import sys

from gi.cli import main

# Punkt wejścia: python app.py <podkomenda> --config plik.json
# Lista podkomend: python app.py list

if __name__ == "__main__":
    sys.exit(main())

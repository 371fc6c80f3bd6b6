"""
Ponto de entrada para `python -m superrad`.
"""

from superrad.cli import main

if __name__ == "__main__":
    main()

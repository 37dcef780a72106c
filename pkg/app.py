"""
DuplexVision - Regiões de Graus de Liberdade Full-Duplex
Ponto de entrada da linha de comando

Uso:
    python app.py region --case mixed_support --format text
    python app.py sweep --overlap --l 1/2 --steps 11
    python app.py verify --in cenario.json --trials 20
"""

import sys
from pathlib import Path

# Adiciona diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent))

from modules.cli import main

if __name__ == "__main__":
    sys.exit(main())

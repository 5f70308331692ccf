"""
Jamming-assisted Eavesdropping Toolkit

並列レイリーフェージングチャネル上のジャミング支援盗聴モデルを
解析・最適化し、モンテカルロ法で検証するためのライブラリとCLI
"""

__version__ = "1.0.0"

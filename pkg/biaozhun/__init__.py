"""实超曲面形式标准形计算引擎主包"""

__version__ = "1.0.0"

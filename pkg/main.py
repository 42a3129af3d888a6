"""
命令行入口：python main.py normalize jet.json --spec nf1

与安装后的 biaozhun 命令等价。
"""
import sys

from biaozhun.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())

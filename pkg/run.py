#!/usr/bin/env python3
"""
localcomp 命令行入口

使用示例:
    python run.py solve problems/max_plus.yaml
    python run.py marginal problems/max_plus.yaml --scope u
    python run.py solve-all problems/counterexample.yaml
    python run.py check-axioms --trials 500 --seed 0
    python run.py demo-counterexample
"""

import sys
from pathlib import Path

# 添加项目目录到路径
sys.path.insert(0, str(Path(__file__).parent))

from app.cli import main as cli_main


def main() -> int:
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

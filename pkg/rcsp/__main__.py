"""Allows `python -m rcsp` to execute the command line interface"""
from rcsp.cli.cmd import run_cmd

if __name__ == "__main__":
    run_cmd()

"""Colored console messages for the command-line interface."""

import os
import sys


class Colors:
    HEADER = '\033[95m'
    OKBLUE = '\033[94m'
    OKCYAN = '\033[96m'
    OKGREEN = '\033[92m'
    WARNING = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'


def _paint(text, *codes):
    if os.getenv("NO_COLOR") or not sys.stderr.isatty():
        return text
    return "".join(codes) + text + Colors.ENDC


def print_header(message):
    """Print a formatted header"""
    rule = "=" * 80
    for line in (rule, message, rule):
        print(_paint(line, Colors.HEADER, Colors.BOLD), file=sys.stderr)


def print_step(step_num, total_steps, message):
    """Print a formatted step"""
    print(f"{_paint(f'[Step {step_num}/{total_steps}]', Colors.OKCYAN, Colors.BOLD)} {message}", file=sys.stderr)


def print_success(message):
    print(_paint(f"✓ {message}", Colors.OKGREEN), file=sys.stderr)


def print_error(message):
    print(_paint(f"✗ {message}", Colors.FAIL), file=sys.stderr)


def print_warning(message):
    print(_paint(f"⚠ {message}", Colors.WARNING), file=sys.stderr)

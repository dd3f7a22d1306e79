"""
Suite Discovery Tool

List all registered verification suites with the commands that run them and
the file sections they need.

Usage:
    python list_checks.py
    python list_checks.py --category hochschild
    python list_checks.py --command all -v
"""

import argparse

from check_registry import COMMANDS, get_registry
import register_checks  # noqa: F401  Import to trigger suite registration

CATEGORIES = ['core', 'borjeson', 'bar', 'hochschild', 'random']


def print_suite(suite, verbose=False):
    """Print suite information."""
    print(f"\n[{suite.category.upper()}] {suite.name}")
    print(f"  ID: {suite.id}")
    print(f"  Description: {suite.description}")
    print(f"  Version: {suite.version}")
    print(f"  Commands: {', '.join(suite.commands)}")
    print(f"  Requires: {', '.join(suite.requires) if suite.requires else 'nothing'}")

    if verbose and suite.checks:
        print(f"  Checks: {', '.join(suite.checks)}")


def main():
    parser = argparse.ArgumentParser(
        description='List available verification suites in the registry'
    )
    parser.add_argument(
        '--category',
        choices=CATEGORIES + ['all'],
        default='all',
        help='Filter by module category'
    )
    parser.add_argument(
        '--command',
        choices=COMMANDS,
        help='Show only the suites a command runs'
    )
    parser.add_argument(
        '-v', '--verbose',
        action='store_true',
        help='Show the check names of each suite'
    )

    args = parser.parse_args()

    registry = get_registry()
    suites = registry.for_command(args.command) if args.command else registry.list_all()
    if args.category != 'all':
        suites = [s for s in suites if s.category == args.category]

    print("=" * 70)
    title = "All Suites" if args.category == 'all' else f"{args.category.capitalize()} Suites"
    print(f"SUITE REGISTRY: {title}")
    print("=" * 70)

    if args.command:
        print(f"Showing suites run by: {args.command}")

    if not suites:
        print("\nNo suites found.")
        return 0

    print(f"\nTotal Suites: {len(suites)}")

    for category in CATEGORIES:
        group = [s for s in suites if s.category == category]
        if not group:
            continue
        print(f"\n{'='*70}")
        print(f"{category.upper()} ({len(group)})")
        print('='*70)
        for suite in group:
            print_suite(suite, args.verbose)

    print()
    return 0


if __name__ == '__main__':
    exit(main())

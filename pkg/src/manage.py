import os
import sys


def main():
    """Run the flow toolkit's management commands, `flow` among them."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install requirements.txt into the active environment before running the "
            "flow toolkit."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()

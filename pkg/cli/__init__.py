from .commands import run, run_main, build_parser, EXIT_OK, EXIT_FAILED, EXIT_USAGE

__all__ = ['run', 'run_main', 'build_parser', 'EXIT_OK', 'EXIT_FAILED', 'EXIT_USAGE']

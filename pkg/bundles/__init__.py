from .loader import BUNDLE_DIR, ExampleBundle, list_examples, example_name, load_example

__all__ = ['BUNDLE_DIR', 'ExampleBundle', 'list_examples', 'example_name', 'load_example']

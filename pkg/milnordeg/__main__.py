from . import main

__name__ == "__main__" and main.run()

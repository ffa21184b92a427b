"""Hand every decision straight to the solver's own heuristic.

The smallest possible driver, and a transport sanity check: running

    drivensat solve file.cnf --driver "extern:python3 fallback_now.py"

must behave exactly like the built-in default driver.
"""

from drivensat_sdk import DriverBase, Fallback, serve


class FallbackNow(DriverBase):

    def get_choice(self, view):
        return Fallback(0)


if __name__ == "__main__":
    serve(FallbackNow())

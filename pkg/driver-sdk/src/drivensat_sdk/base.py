"""Driver base class: subclass and override the pieces you need."""

from .responses import Fallback

# Event names a driver may subscribe to, as they appear on the wire.
EVENT_NAMES = ("SEARCH", "INCOCHOICE", "CONFLICT", "LEARN", "LITCONFLICT",
               "DELETE", "RESTART", "UNROLLLIT")


class DriverBase:
    """One instance serves one solve.

    The loop calls frozen_atoms() once, before the search starts, and
    get_choice(view) whenever the solver wants a decision; the event
    callbacks fire in between for whatever `subscriptions` lists.  The
    view is the mirrored assignment the SDK maintains; it is also
    available as self.view from the moment serving starts.
    """

    subscriptions = ()

    view = None  # bound by serve() before anything else runs

    def frozen_atoms(self):
        """Atoms the preprocessor must leave alone; default none.

        self.view.num_atoms is already set when this runs.
        """
        return ()

    def get_choice(self, view):
        """Pick what happens next; default cedes everything to the solver."""
        return Fallback(0)

    # Event callbacks. Arguments are plain ints and tuples of ints.

    def on_search(self, num_atoms, clauses):
        pass

    def on_inco_choice(self, lit):
        pass

    def on_conflict(self, lit):
        """lit is the decision the conflict falls under, 0 at level 0."""
        pass

    def on_learn_clause(self, lits):
        pass

    def on_lit_in_conflict(self, lit):
        pass

    def on_deletion(self, lits):
        pass

    def on_restart(self):
        pass

    def on_unroll_lit(self, lit):
        pass

from hypothesis import strategies as st

from ccsim.terms import NIL, Term, prefix


def terms(actions=("a", "b", "c"), max_depth=3, max_width=3):
    """Random canonical terms; hypothesis shrinks toward 0."""

    def build(depth):
        if depth == 0:
            return st.just(NIL)
        child = build(depth - 1)
        summand = st.tuples(st.sampled_from(actions), child)
        return st.lists(summand, max_size=max_width).map(Term)

    return build(max_depth)


def raw_trees(actions=("a", "b"), max_leaves=8):
    from ccsim.terms import Nil, Prefix, Sum

    return st.recursive(
        st.just(Nil()),
        lambda kids: st.one_of(
            st.builds(Prefix, st.sampled_from(actions), kids),
            st.builds(Sum, kids, kids),
        ),
        max_leaves=max_leaves,
    )


__all__ = ["terms", "raw_trees", "prefix"]

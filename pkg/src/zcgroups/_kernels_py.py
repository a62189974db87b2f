"""Pure-Python stepping kernels.

The same call surface is provided by the optional compiled module
``zcgroups._speedups``; ``zcgroups._kernels`` picks one at import time.
Everything here works on flattened automaton tables and integer state
codes (code 0 is the identity state), with plain Python integers for
letters, so arbitrarily large letters are supported.

Signed generators follow the usual inversion rules of tree
automorphisms acting by per-state letter translations:

* ``q`` sends a letter ``z`` to ``z + t(q)`` and continues in the state
  ``q`` restricts to at ``z``;
* ``q^-1`` sends ``z`` to ``z - t(q)`` and continues in the inverse of
  the state ``q`` restricts to at ``z - t(q)``.
"""

BACKEND = "pure"


class Kernel:
    """Flattened automaton tables plus the stepping loops.

    ``trans`` maps state codes to letter translations.  The sparse
    restriction map is stored CSR-style: state ``q`` owns the entries
    ``res_key[res_ptr[q]:res_ptr[q+1]]`` (letters) with restriction
    targets ``res_val`` in parallel; absent letters restrict to 0.
    """

    backend = "pure"

    def __init__(self, trans, res_ptr, res_key, res_val):
        self.trans = list(trans)
        self.res_ptr = list(res_ptr)
        self.res_key = list(res_key)
        self.res_val = list(res_val)

    def _res(self, q, z):
        for i in range(self.res_ptr[q], self.res_ptr[q + 1]):
            if self.res_key[i] == z:
                return self.res_val[i]
        return 0

    def gen_act(self, state, sign, letters):
        """Image of a tree word under a single signed generator."""
        q = state
        out = []
        for z in letters:
            if q == 0:
                out.append(z)
            elif sign > 0:
                out.append(z + self.trans[q])
                q = self._res(q, z)
            else:
                z = z - self.trans[q]
                out.append(z)
                q = self._res(q, z)
        return tuple(out)

    def act(self, states, signs, letters):
        """Image of a tree word under a product of signed generators.

        The product acts on the left, so the last entry of ``states`` is
        applied first.  Processing is column-wise: for every tree letter
        the whole stack of current section states is advanced once.
        """
        st = list(states)
        sg = list(signs)
        n = len(st)
        out = []
        for z in letters:
            for j in range(n - 1, -1, -1):
                q = st[j]
                if q == 0:
                    continue
                if sg[j] > 0:
                    st[j] = self._res(q, z)
                    z = z + self.trans[q]
                else:
                    z = z - self.trans[q]
                    st[j] = self._res(q, z)
            out.append(z)
        return tuple(out)

    def section_at(self, states, signs, letter):
        """First-level data of a product at one letter.

        Returns ``(image, states', signs')`` where the image is the
        letter's image under the product and the primed arrays are the
        freely reduced section word at that letter.
        """
        n = len(states)
        sec = [0] * n
        z = letter
        for j in range(n - 1, -1, -1):
            q = states[j]
            if q == 0:
                continue
            if signs[j] > 0:
                sec[j] = self._res(q, z)
                z = z + self.trans[q]
            else:
                z = z - self.trans[q]
                sec[j] = self._res(q, z)
        out_st = []
        out_sg = []
        for j in range(n):
            q = sec[j]
            if q == 0:
                continue
            s = signs[j]
            if out_st and out_st[-1] == q and out_sg[-1] == -s:
                out_st.pop()
                out_sg.pop()
            else:
                out_st.append(q)
                out_sg.append(s)
        return z, tuple(out_st), tuple(out_sg)

    def state_section(self, state, letters):
        """Section state reached from ``state`` by walking ``letters``."""
        q = state
        for z in letters:
            if q == 0:
                return 0
            q = self._res(q, z)
        return q

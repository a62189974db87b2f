# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled stepping kernels; mirrors ``zcgroups._kernels_py``.

Letters are handled as C int64 values.  Inputs outside the guarded
range (and words longer than the stack buffers) raise ``OverflowError``
so that callers can transparently retry on the pure-Python twin.
"""

import array as _array

BACKEND = "compiled"

DEF MAX_WORD = 512

cdef long long LETTER_LIMIT = (<long long>1) << 60
cdef long long TRANS_LIMIT = (<long long>1) << 20


cdef class Kernel:
    cdef object _bt, _bp, _bk, _bv
    cdef long long[::1] trans
    cdef int[::1] rptr
    cdef long long[::1] rkey
    cdef int[::1] rval
    cdef int n

    def __init__(self, trans, res_ptr, res_key, res_val):
        cdef long long v
        for x in trans:
            v = x
            if v > TRANS_LIMIT or v < -TRANS_LIMIT:
                raise OverflowError("translation out of compiled-kernel range")
        for x in res_key:
            v = x
            if v > LETTER_LIMIT or v < -LETTER_LIMIT:
                raise OverflowError("restriction letter out of compiled-kernel range")
        self.n = len(trans)
        self._bt = _array.array('q', trans)
        self._bp = _array.array('i', res_ptr)
        # keep buffers nonempty so the memoryviews are always valid
        self._bk = _array.array('q', res_key if len(res_key) else [0])
        self._bv = _array.array('i', res_val if len(res_val) else [0])
        self.trans = self._bt
        self.rptr = self._bp
        self.rkey = self._bk
        self.rval = self._bv

    @property
    def backend(self):
        return "compiled"

    cdef inline int _res(self, int q, long long z) noexcept nogil:
        cdef int i
        for i in range(self.rptr[q], self.rptr[q + 1]):
            if self.rkey[i] == z:
                return self.rval[i]
        return 0

    def gen_act(self, int state, int sign, letters):
        """Image of a tree word under a single signed generator."""
        cdef int q = state
        cdef long long z
        out = []
        for x in letters:
            z = x
            if z > LETTER_LIMIT or z < -LETTER_LIMIT:
                raise OverflowError("letter out of compiled-kernel range")
            if q == 0:
                out.append(x)
                continue
            if sign > 0:
                out.append(z + self.trans[q])
                q = self._res(q, z)
            else:
                z = z - self.trans[q]
                out.append(z)
                q = self._res(q, z)
        return tuple(out)

    def act(self, states, signs, letters):
        """Image of a tree word under a product of signed generators."""
        cdef int n = len(states)
        cdef int st[MAX_WORD]
        cdef int sg[MAX_WORD]
        cdef int j, q
        cdef long long z
        if n > MAX_WORD:
            raise OverflowError("word too long for compiled kernel")
        for j in range(n):
            st[j] = states[j]
            sg[j] = signs[j]
        out = []
        for x in letters:
            z = x
            if z > LETTER_LIMIT or z < -LETTER_LIMIT:
                raise OverflowError("letter out of compiled-kernel range")
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

        Returns ``(image, states', signs')`` with the section word
        freely reduced.
        """
        cdef int n = len(states)
        cdef int sec[MAX_WORD]
        cdef int sgn[MAX_WORD]
        cdef int ost[MAX_WORD]
        cdef int osg[MAX_WORD]
        cdef int j, q, top
        cdef long long z = letter
        if n > MAX_WORD:
            raise OverflowError("word too long for compiled kernel")
        if z > LETTER_LIMIT or z < -LETTER_LIMIT:
            raise OverflowError("letter out of compiled-kernel range")
        for j in range(n):
            sgn[j] = signs[j]
        for j in range(n - 1, -1, -1):
            q = states[j]
            if q == 0:
                sec[j] = 0
                continue
            if sgn[j] > 0:
                sec[j] = self._res(q, z)
                z = z + self.trans[q]
            else:
                z = z - self.trans[q]
                sec[j] = self._res(q, z)
        top = 0
        for j in range(n):
            q = sec[j]
            if q == 0:
                continue
            if top > 0 and ost[top - 1] == q and osg[top - 1] == -sgn[j]:
                top -= 1
            else:
                ost[top] = q
                osg[top] = sgn[j]
                top += 1
        out_st = []
        out_sg = []
        for j in range(top):
            out_st.append(ost[j])
            out_sg.append(osg[j])
        return z, tuple(out_st), tuple(out_sg)

    def state_section(self, int state, letters):
        """Section state reached from ``state`` by walking ``letters``."""
        cdef int q = state
        cdef long long z
        for x in letters:
            if q == 0:
                return 0
            z = x
            if z > LETTER_LIMIT or z < -LETTER_LIMIT:
                raise OverflowError("letter out of compiled-kernel range")
            q = self._res(q, z)
        return q

"""Point-counting and partial-sum kernels.

``_ckernels`` is the compiled Cython build; ``_pykernels`` is the pure-Python
fallback with the same signatures.  :mod:`icosa.kernels` picks one at import.
"""

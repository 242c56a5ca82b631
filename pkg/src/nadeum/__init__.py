"""Natural deduction assistant for classical first-order logic.

A small trusted kernel checks goal-directed proofs in a 14-rule system over
de Bruijn-indexed formulas; finite-model search provides an empirical
soundness oracle and refutations; a bounded prover gives provability
feedback; a Hilbert-style propositional subsystem, an exercise corpus, an
HTTP service and a CLI round out the toolbox.
"""

__version__ = "0.1.0"

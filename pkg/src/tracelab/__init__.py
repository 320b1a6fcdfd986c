"""Executable partially traced categories and their completions.

Layers:
  * matcore: the numerical substrate (permutations, partial traces, Choi
    matrices, tolerance-aware linear algebra).
  * tracecats: ten concrete symmetric monoidal categories with partial
    traces and the randomized axiom checker.
  * intp: the partial Int construction with n-ary path composition.
  * completions: free affine monoidal and coproduct completions with the
    functors into superoperators.
  * finpresheaf: coends, Day convolution, Kan extensions and the !-comonad
    over finite bases.
  * cli: the `tracelab` command bundling everything into suites.
"""

__version__ = "0.1.0"

"""Rewrite the golden files and the digest index of the bundled corpus.

Run after an intentional change of output format; review the diff.
"""

from hochgap.cli import CORPUS_DIR, GOLDEN_DIR, digest, golden_text

ENTRIES = {
    "zsqrt2": ("Z[t]/(t^2-2), the integers of Q(sqrt 2)",
               "HH_n = S/(2t) for odd n, 0 for even n >= 2; HH^n = S/(2t) for even n >= 2, 0 for odd n"),
    "qx_poly": ("Q[x]", "smooth; HH_n = Lambda^n Omega"),
    "qxy_poly": ("Q[x,y]", "smooth; HH_n = Lambda^n Omega"),
    "dual_numbers_q": ("Q[x]/(x^2)", "not smooth; HH_n of dimension [2,1,1,...]"),
    "dual_numbers_f5": ("F_5[x]/(x^2)", "not smooth; HH_n of dimension [2,1,1,...]"),
    "etale": ("Q[e]/(e^2-e) = Q x Q", "separable; HH_n = 0 for n >= 1"),
    "quadratic": ("Q[x]/(x^2-2)", "separable; HH_n = 0 for n >= 1"),
    "campillo": ("Q[x,y]/(x^2,xy) -> quotient by y^2", "eps = (1,1); 1-closed true, 2-closed false"),
}


def main():
    lines = ["# bundled presentations: description, expected behaviour, sha256 of golden/<name>.json", ""]
    for name, (desc, expect) in ENTRIES.items():
        text = golden_text(name)
        (GOLDEN_DIR / f"{name}.json").write_text(text)
        lines += [f"[entries.{name}]", f'description = "{desc}"', f'expectations = "{expect}"',
                  f'digest = "{digest(text)}"', ""]
    (CORPUS_DIR / "index.toml").write_text("\n".join(lines))


if __name__ == "__main__":
    main()

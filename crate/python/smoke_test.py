"""Smoke test for the rsinterp extension module. Exits nonzero on failure."""

import sys

import rsinterp


def main() -> int:
    code = rsinterp.RsCode(11, 4)
    assert (code.q, code.n, code.k, code.t_max, code.alpha) == (11, 10, 4, 3, 2), repr(code)

    c = code.encode([7, 3, 2, 7])
    assert c == [8, 0, 4, 3, 1, 10, 8, 8, 3, 3], c
    assert code.is_codeword(c)

    out = code.decode([8, 0, 4, 3, 6, 10, 1, 8, 4, 3])
    assert out["success"], out
    assert out["codeword"] == c
    assert out["error"] == [0, 0, 0, 0, 5, 0, 4, 0, 1, 0]
    assert out["error_count"] == 3

    big = rsinterp.RsCode(257, 128)
    msg = [(i * 37) % 257 for i in range(128)]
    received, error = big.corrupt(big.encode(msg), big.t_max, seed=7)
    for solver in ("structured", "dense"):
        out = big.decode(received, solver=solver)
        assert out["success"] and out["message"] == msg and out["error"] == error, solver

    naive = rsinterp.RsCode(47, 20, engine="naive")
    assert naive.engine == "naive"
    beyond = naive.decode(naive.corrupt([0] * 46, naive.t_max + 1, seed=3)[0])
    assert not beyond["success"] or naive.is_codeword(beyond["codeword"])

    try:
        rsinterp.RsCode(12, 4)
    except ValueError as e:
        assert "modulus not prime" in str(e)
    else:
        raise AssertionError("expected ValueError for q = 12")

    assert rsinterp.is_prime(65537) and not rsinterp.is_prime(65535)
    assert rsinterp.selftest()
    assert rsinterp.oracle_check(7, 2, trials=20)
    print("smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())

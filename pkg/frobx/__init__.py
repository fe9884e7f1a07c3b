"""有理数上の有限次元多元環について、Frobenius 構造・随伴・mate・2D TQFT を厳密に検査する。"""

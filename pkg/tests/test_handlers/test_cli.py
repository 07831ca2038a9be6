"""
End-to-end tests for the toeplitz-inv command line
"""
import json

import pytest

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeq:

    def test_tridiagonal_bits(self, capsys):
        code, out, _ = run(capsys, 'seq', '--stencil', '1,1,1', '--n', '9', '--field', 'gf:2')
        assert code == 0
        assert out == "101101101\n"

    def test_naive_agrees(self, capsys):
        code, out, _ = run(capsys, 'seq', '--stencil', '1,1,1', '--n', '9', '--field', 'gf:2', '--algo', 'naive')
        assert code == 0
        assert out == "101101101\n"

    def test_runs(self, capsys):
        code, out, _ = run(capsys, 'seq', '--stencil', '1,0,1', '--n', '6', '--field', 'rational', '--format', 'runs')
        assert code == 0
        assert out.strip() == "(0,1)(1,1)(0,1)(1,1)(0,1)(1,1)"

    def test_json(self, capsys):
        code, out, _ = run(capsys, 'seq', '--stencil=-1,2,-1', '--n', '5', '--field', 'rational', '--format', 'json')
        payload = json.loads(out)
        assert code == 0
        assert payload['bits'] == "11111"
        assert payload['singular_orders'] == []
        assert list(payload)[:5] == ['n', 'k', 'field', 'algo', 'bits']

    def test_stencil_file(self, capsys, temp_file):
        with open(temp_file, 'w') as f:
            f.write("# tridiagonal ones\n1,1,1\n")
        code, out, _ = run(capsys, 'seq', '--stencil', f"@{temp_file}", '--n', '6', '--field', 'gf:2')
        assert code == 0
        assert out == "101101\n"

    def test_binary_stencil_file(self, capsys, temp_file):
        with open(temp_file, 'wb') as f:
            f.write(b"1,\xff,1\n")
        code, out, err = run(capsys, 'seq', '--stencil', f"@{temp_file}", '--n', '3', '--field', 'gf:2')
        assert code == 2
        assert out == ""
        assert "error: cannot read stencil file" in err
        assert "Traceback" not in err

    def test_approx_notice(self, capsys):
        code, out, err = run(capsys, 'seq', '--stencil', '1,4,1', '--n', '4', '--field', 'approx:1e-9')
        assert code == 0
        assert out == "1111\n"
        assert "best-effort" in err

    def test_even_stencil(self, capsys):
        code, out, err = run(capsys, 'seq', '--stencil', '1,2', '--n', '3', '--field', 'gf:5')
        assert code == 2
        assert out == ""
        assert "stencil length must be odd" in err

    @pytest.mark.parametrize("field", ["gf:4", "gf:1", "real", "approx:0"])
    def test_bad_field(self, capsys, field):
        code, _, err = run(capsys, 'seq', '--stencil', '1,1,1', '--n', '3', '--field', field)
        assert code == 2
        assert err.startswith("error:")

    @pytest.mark.parametrize("n", ["0", "-3", "ten"])
    def test_bad_n(self, capsys, n):
        code, _, _ = run(capsys, 'seq', '--stencil', '1,1,1', f'--n={n}', '--field', 'gf:2')
        assert code == 1

    def test_unknown_format(self, capsys):
        code, _, err = run(capsys, 'seq', '--stencil', '1,1,1', '--n', '3', '--field', 'gf:2', '--format', 'xml')
        assert code == 1
        assert "format" in err


class TestUsage:

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(['seq', '--stencil', '1,1,1', '--n', '3', '--field', 'gf:2', '--colour'])
        assert exc.value.code == 1

    def test_missing_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_inject_fault_hidden(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(['verify', '--help'])
        assert exc.value.code == 0
        assert '--inject-fault' not in capsys.readouterr().out


class TestVerify:

    def test_single_stencil(self, capsys):
        code, out, _ = run(capsys, 'verify', '--stencil', '1,1,1', '--n', '12', '--field', 'gf:2')
        assert code == 0
        assert out.strip() == "OK (3 algorithms agree, blocks match)"

    def test_random_batch(self, capsys):
        code, out, _ = run(capsys, 'verify', '--random', '200', '--k', '4', '--n', '12',
                           '--field', 'gf:7', '--seed', '42')
        assert code == 0
        assert out.strip() == "OK 200/200"

    def test_injected_fault(self, capsys):
        code, out, err = run(capsys, 'verify', '--stencil', '1,1,1', '--n', '12', '--field', 'gf:2',
                             '--inject-fault', '3')
        assert code == 3
        assert out.startswith("MISMATCH")
        assert "order: 3" in out
        assert "error:" in err

    def test_n_above_limit(self, capsys):
        code, _, err = run(capsys, 'verify', '--stencil', '1,1,1', '--n', '65', '--field', 'gf:2')
        assert code == 1
        assert "at most 64" in err

    def test_limit_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv('VERIFY_MAX_N', '8')
        from config.settings import get_settings
        get_settings(reload=True)
        code, _, _ = run(capsys, 'verify', '--stencil', '1,1,1', '--n', '9', '--field', 'gf:2')
        assert code == 1

    @pytest.mark.parametrize("argv", [
        ['--stencil', '1,4,1', '--n', '8'],
        ['--random', '50', '--k', '4', '--n', '8', '--seed', '1'],
    ])
    def test_approx_field_rejected(self, capsys, argv):
        code, out, err = run(capsys, 'verify', *argv, '--field', 'approx:1e-9')
        assert code == 1
        assert "MISMATCH" not in out
        assert "exact field" in err

    def test_random_needs_k(self, capsys):
        code, _, err = run(capsys, 'verify', '--random', '5', '--n', '8', '--field', 'gf:7')
        assert code == 1
        assert "--k" in err

    def test_needs_stencil(self, capsys):
        code, _, _ = run(capsys, 'verify', '--n', '8', '--field', 'gf:7')
        assert code == 1


class TestBench:

    def test_csv(self, capsys):
        code, out, _ = run(capsys, 'bench', '--k', '1,2', '--n', '100', '--field', 'gf:7',
                           '--algo', 'sliding,naive', '--csv')
        rows = out.split('\r\n')
        assert code == 0
        assert rows[0].startswith("k,n,algo,field,wall_ms,generate_mul_div")
        assert [row.split(',')[:3] for row in rows[1:5]] == [
            ['1', '100', 'naive'], ['1', '100', 'sliding'], ['2', '100', 'naive'], ['2', '100', 'sliding'],
        ]
        assert rows[4].split(',')[5] == str(10 * 100 + 1)

    def test_table(self, capsys):
        code, out, _ = run(capsys, 'bench', '--k', '1', '--n', '50', '--field', 'rational')
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_bad_algo(self, capsys):
        code, _, _ = run(capsys, 'bench', '--k', '1', '--n', '50', '--field', 'gf:7', '--algo', 'dense')
        assert code == 1

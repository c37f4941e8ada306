import jpprym


def test_main():
    assert jpprym
    assert jpprym.__version__

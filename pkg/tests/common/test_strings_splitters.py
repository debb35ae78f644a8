from apkwarden.common.strings.splitters import (
    csv_to_list,
    iter_list_lines,
    read_list_file,
    split_identifier,
    split_words,
)


def test_csv_to_list_none():
    assert csv_to_list(None) == []


def test_csv_to_list_list_input():
    assert csv_to_list([" a ", "b", "", "  "]) == ["a", "b"]


def test_csv_to_list_string_input():
    assert csv_to_list(" a, b ,c ,, d ") == ["a", "b", "c", "d"]


def test_split_identifier_separators():
    assert split_identifier("personal_details_name") == ["personal", "details", "name"]
    assert split_identifier("home-address.line$1") == ["home", "address", "line", "1"]


def test_split_identifier_camel_and_acronyms():
    assert split_identifier("userPhoneNumber") == ["user", "phone", "number"]
    assert split_identifier("HTTPServer2") == ["http", "server", "2"]
    assert split_identifier("mEmail") == ["m", "email"]


def test_split_identifier_keeps_compound_words_whole():
    # "username" is its own token; it must not be split into "user" + "name"
    assert split_identifier("username") == ["username"]
    assert split_identifier("") == []
    assert split_identifier(None) == []


def test_split_words_free_text():
    assert split_words("Full name:") == ["full", "name"]
    assert split_words("E-mail (optional)") == ["e", "mail", "optional"]
    assert split_words(None) == []


def test_iter_list_lines_strips_comments_and_blanks():
    lines = ["# header", "name", "", "  phone  # trailing", "   "]
    assert iter_list_lines(lines) == ["name", "phone"]


def test_read_list_file(tmp_path):
    p = tmp_path / "seeds.txt"
    p.write_text("# seeds\nemail\n\npassport\n", encoding="utf-8")
    assert read_list_file(p) == ["email", "passport"]

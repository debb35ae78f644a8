from apkwarden.common.naming.slugger import report_file_name, slugify


def test_slugify_basic():
    assert slugify("COVID Tracker.apk") == "covid-tracker-apk"
    assert slugify("  Funny__Name!! ") == "funny-name"


def test_slugify_ascii_folding_and_empty():
    assert slugify("Café Übersicht") == "cafe-ubersicht"
    assert slugify("!!!") == ""
    assert slugify(None) == ""


def test_slugify_truncates_without_trailing_dash():
    out = slugify("a" * 10 + " " + "b" * 10, max_len=11)
    assert out == "a" * 10
    assert len(slugify("x" * 200)) == 64


def test_report_file_name_uses_digest_prefix():
    digest = "ab" * 32
    assert report_file_name("My App", digest) == "my-app-abababababab.json"
    assert report_file_name("???", digest, suffix=".txt") == "apk-abababababab.txt"


def test_report_file_name_numbers_taken_names():
    digest = "cd" * 32
    first = report_file_name("app", digest)
    second = report_file_name("app", digest, taken={first})
    third = report_file_name("app", digest, taken={first, second})
    assert (second, third) == ("app-cdcdcdcdcdcd-2.json", "app-cdcdcdcdcdcd-3.json")
    assert report_file_name("app", "ef" * 32, taken={first}) == "app-efefefefefef.json"

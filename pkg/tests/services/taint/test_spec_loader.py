import pytest

from apkwarden.domain.entities.dex import MethodRef, Prototype
from apkwarden.domain.enums.channel import Channel, SourceKind
from apkwarden.domain.enums.component_kind import ComponentKind
from apkwarden.domain.errors import DataFileError
from apkwarden.services.taint import (
    default_entry_point_policy,
    default_framework_types,
    load_entry_point_policy,
    load_framework_types,
    load_taint_spec,
    parse_taint_spec,
)

SMS = "Landroid/telephony/SmsManager;"


def _ref(cls, name, params=(), ret="V"):
    return MethodRef(cls, name, Prototype("V" + "L" * len(params), ret, tuple(params)))


# ----- Test 1: records, comments and matching ----
def test_parse_records():
    spec = parse_taint_spec(
        [
            "# leading comment",
            "",
            "source Location Landroid/location/Location; getLatitude ()",
            "sink sms  Landroid/telephony/SmsManager;  sendTextMessage *   # any overload",
        ]
    )
    assert len(spec) == 2
    (src,) = spec.sources
    (sink,) = spec.sinks
    assert src.label == SourceKind.Location and src.line == 3
    assert sink.label == Channel.SMS and sink.line == 4

    send = _ref(SMS, "sendTextMessage", ("Ljava/lang/String;",) * 3)
    assert spec.sink_for(send) is sink
    assert spec.source_for(_ref("Landroid/location/Location;", "getLatitude", ret="D")) is src
    assert spec.source_for(_ref("Landroid/location/Location;", "getLatitude", ("I",), "D")) is None


def test_shipped_spec_has_every_channel(analysis_data):
    channels = {p.label for p in analysis_data.spec.sinks}
    assert channels == set(Channel)
    assert analysis_data.source_sink_count == len(analysis_data.spec)


# ----- Test 2: malformed records ----
@pytest.mark.parametrize(
    "line, fragment",
    [
        ("source Location Landroid/location/Location; getLatitude", "expected 5 columns"),
        ("taint Location Landroid/location/Location; getLatitude ()", "role must be"),
        ("source Location android.location.Location getLatitude ()", "bad class descriptor"),
        ("sink Pigeon Landroid/os/Bundle; putString *", "unknown sink channel"),
        ("source Weather Landroid/os/Bundle; getString *", "unknown source kind"),
    ],
)
def test_malformed_record(line, fragment):
    with pytest.raises(DataFileError) as exc:
        parse_taint_spec(["# header", line], source="custom.txt")
    assert "line 2" in exc.value.message
    assert fragment in exc.value.message
    assert exc.value.entry == "custom.txt"


def test_empty_spec_rejected():
    with pytest.raises(DataFileError, match="no source/sink records"):
        parse_taint_spec(["# nothing here", ""])


def test_load_from_file(tmp_path):
    path = tmp_path / "ss.txt"
    path.write_text("sink Log Landroid/util/Log; * *\n", encoding="utf-8")
    spec = load_taint_spec(path)
    assert [p.label for p in spec.sinks] == [Channel.Log]
    assert spec.sink_for(_ref("Landroid/util/Log;", "wtf", ("Ljava/lang/String;",) * 2, "I"))

    with pytest.raises(DataFileError, match="not found"):
        load_taint_spec(tmp_path / "missing.txt")


# ----- Test 3: entry-point policy ----
def test_default_policy():
    policy = default_entry_point_policy()
    assert "onReceive" in policy.lifecycle_names(ComponentKind.Receiver)
    assert "<init>" in policy.lifecycle_names(ComponentKind.Activity)
    assert policy.is_registration("setOnClickListener")
    assert not policy.is_registration("start")
    assert policy.is_callback("onClick")
    assert "attachBaseContext" in policy.application


def test_policy_without_constructors(tmp_path):
    path = tmp_path / "ep.yaml"
    path.write_text(
        "lifecycle:\n  activity: [onCreate]\nconstructors: false\ncallbacks: [run]\n",
        encoding="utf-8",
    )
    policy = load_entry_point_policy(path)
    assert policy.lifecycle_names(ComponentKind.Activity) == ("onCreate",)
    assert policy.lifecycle_names(ComponentKind.Service) == ()
    assert policy.registration == ()
    assert policy.is_callback("run")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("lifecycle: [unclosed\n", "invalid YAML"),
        ("- onCreate\n", "must be a mapping"),
        ("lifecycle:\n  fragment: [onAttach]\n", "unknown component kind"),
    ],
)
def test_invalid_policy(tmp_path, text, fragment):
    path = tmp_path / "ep.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DataFileError) as exc:
        load_entry_point_policy(path)
    assert fragment in exc.value.message
    assert exc.value.entry == str(path)


def test_missing_policy(tmp_path):
    with pytest.raises(DataFileError, match="not found"):
        load_entry_point_policy(tmp_path / "nope.yaml")


def test_shipped_framework_types_reach_context():
    types = default_framework_types()
    context = "Landroid/content/Context;"
    assert context in types.closure("Landroidx/appcompat/app/AppCompatActivity;")
    assert context in types.closure("Landroid/app/Application;")
    assert types.closure("Landroid/widget/EditText;")[:1] == ("Landroid/widget/TextView;",)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("supertypes: {unclosed\n", "invalid YAML"),
        ("- La;\n", "must be a mapping"),
        ("supertypes:\n  Activity: [Context]\n", "not a class descriptor"),
    ],
)
def test_invalid_framework_types(tmp_path, text, fragment):
    path = tmp_path / "ft.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DataFileError) as exc:
        load_framework_types(path)
    assert fragment in exc.value.message
    assert exc.value.entry == str(path)


def test_view_text_sources_are_shipped(analysis_data):
    get_text = _ref("Landroid/widget/EditText;", "getText", ret="Landroid/text/Editable;")
    ancestors = default_framework_types().extend("Landroid/widget/EditText;", ())
    pattern = analysis_data.spec.source_for(get_text, ancestors)
    assert pattern is not None and pattern.label == SourceKind.UserInput
    find = _ref("Lcom/x/Main;", "findViewById", ("I",), "Landroid/view/View;")
    assert analysis_data.spec.source_for(find, ("Landroid/app/Activity;",)) is not None

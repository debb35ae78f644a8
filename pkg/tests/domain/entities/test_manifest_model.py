from apkwarden.domain.entities.manifest import Component, ManifestModel
from apkwarden.domain.enums import ComponentKind, LaunchMode


def test_component_descriptor():
    c = Component(ComponentKind.Activity, "com.example.app.MainActivity")
    assert c.descriptor == "Lcom/example/app/MainActivity;"


def test_effectively_exported_tri_state():
    explicit_no = Component(ComponentKind.Receiver, "a.B", exported=False, intent_filters=2)
    explicit_yes = Component(ComponentKind.Service, "a.C", exported=True)
    implied = Component(ComponentKind.Receiver, "a.D", intent_filters=1)
    private = Component(ComponentKind.Activity, "a.E")
    assert explicit_no.effectively_exported is False
    assert explicit_yes.effectively_exported is True
    assert implied.effectively_exported is True
    assert private.effectively_exported is False


def test_components_of_and_application_descriptor():
    m = ManifestModel(
        package="com.example",
        components=(
            Component(ComponentKind.Activity, "com.example.A"),
            Component(ComponentKind.Service, "com.example.S"),
            Component(ComponentKind.Activity, "com.example.B"),
        ),
        application_name="com.example.App",
    )
    assert [c.name for c in m.components_of(ComponentKind.Activity)] == [
        "com.example.A",
        "com.example.B",
    ]
    assert m.application_descriptor == "Lcom/example/App;"
    assert ManifestModel(package="x").application_descriptor is None


def test_launch_mode_from_attr():
    assert LaunchMode.from_attr(2) is LaunchMode.singleTask
    assert LaunchMode.from_attr(3) is LaunchMode.singleInstance
    assert LaunchMode.from_attr(4) is LaunchMode.singleTask
    assert LaunchMode.from_attr("singleTop") is LaunchMode.singleTop
    assert LaunchMode.from_attr("bogus") is LaunchMode.standard
    assert LaunchMode.from_attr(None) is LaunchMode.standard
    assert LaunchMode.from_attr(True) is LaunchMode.standard

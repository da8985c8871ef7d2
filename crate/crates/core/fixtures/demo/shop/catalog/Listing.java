package shop.catalog;

public class Listing {
    private String title;

    // @feature("browse")
    public String render() {
        return "[" + title + "]";
    }
}

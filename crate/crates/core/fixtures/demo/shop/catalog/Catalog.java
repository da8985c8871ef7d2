package shop.catalog;

public class Catalog {
    private int count;
    private int lastPrice;

    // @feature("browse")
    public void add(String name, int price) {
        count = count + 1;
        lastPrice = price;
    }

    // @feature("browse")
    public int priceOf(String name) {
        if (count == 0) {
            return 0;
        }
        return lastPrice;
    }
}

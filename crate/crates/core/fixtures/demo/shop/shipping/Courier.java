package shop.shipping;

public class Courier {
    private int capacity;
    private int loaded;

    // @feature("delivery")
    public boolean accept(Shipment shipment) {
        if (loaded >= capacity) {
            return false;
        }
        loaded = loaded + 1;
        return shipment.isDispatched();
    }
}
